#pragma once

#include <map>
#include <string>
#include <vector>

namespace slc {

/// Flat key=value configuration ('#' starts a comment, values may be
/// space-separated lists).
class Config {
public:
    Config() = default;
    static Config load(const std::string& path);
    static Config parse(const std::string& text);

    bool has(const std::string& key) const;
    std::string str(const std::string& key, const std::string& fallback) const;
    double num(const std::string& key, double fallback) const;
    long integer(const std::string& key, long fallback) const;
    std::vector<double> list(const std::string& key,
                             const std::vector<double>& fallback) const;

private:
    std::map<std::string, std::string> kv_;
};

/// 17-significant-digit decimal form, identical across runs.
std::string g17(double x);

/// Single-quadrant heat map of a grid scalar as a static SVG.
void write_svg_heatmap(const std::string& path, int nx, int ny,
                       const std::vector<double>& values,
                       const std::string& title);

} // namespace slc
