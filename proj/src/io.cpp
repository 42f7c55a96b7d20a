#include "slc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slc {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Config Config::parse(const std::string& text) {
    Config cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("Config: expected key=value, got '" + line + "'");
        cfg.kv_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::str(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::num(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size())
        throw std::runtime_error("Config: bad number for " + key);
    return v;
}

long Config::integer(const std::string& key, long fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    return std::stol(it->second);
}

std::vector<double> Config::list(const std::string& key,
                                 const std::vector<double>& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    double v;
    while (ss >> v) out.push_back(v);
    return out;
}

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_svg_heatmap(const std::string& path, int nx, int ny,
                       const std::vector<double>& values,
                       const std::string& title) {
    double lo = 0, hi = 0;
    bool any = false;
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        if (!any) {
            lo = hi = v;
            any = true;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!any) { lo = 0; hi = 1; }
    if (hi - lo < 1e-300) hi = lo + 1;

    const int cell = std::max(2, 600 / std::max(nx, ny));
    const int wpx = nx * cell, hpx = ny * cell + 24;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_svg_heatmap: cannot open " + path);
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << wpx << "' height='"
       << hpx << "'>\n";
    os << "<text x='4' y='16' font-family='monospace' font-size='12'>" << title
       << " [" << g17(lo) << ", " << g17(hi) << "]</text>\n";
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            double v = values[static_cast<size_t>(i) * ny + j];
            int r = 230, g = 230, b = 230;
            if (std::isfinite(v)) {
                double t = (v - lo) / (hi - lo);
                r = static_cast<int>(255 * t);
                g = static_cast<int>(64 + 96 * (1 - std::abs(2 * t - 1)));
                b = static_cast<int>(255 * (1 - t));
            }
            os << "<rect x='" << i * cell << "' y='" << 24 + (ny - 1 - j) * cell
               << "' width='" << cell << "' height='" << cell << "' fill='rgb(" << r
               << "," << g << "," << b << ")'/>\n";
        }
    os << "</svg>\n";
}

} // namespace slc
