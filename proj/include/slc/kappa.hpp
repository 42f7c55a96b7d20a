#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace slc {

/// Ordered tuple of principal curvatures, kappa_1 >= ... >= kappa_n.
class KappaVector {
public:
    explicit KappaVector(std::vector<double> values) : v_(std::move(values)) {
        if (v_.size() < 2)
            throw std::invalid_argument("KappaVector: dimension must be >= 2");
        for (double x : v_)
            if (!std::isfinite(x))
                throw std::invalid_argument("KappaVector: entries must be finite");
        std::sort(v_.begin(), v_.end(), std::greater<double>());
    }

    int n() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    const std::vector<double>& values() const { return v_; }

private:
    std::vector<double> v_;
};

/// Phase of the curvature equation sum_i arctan(kappa_i) = Theta.
/// theta_small is the shifted angle theta = Theta - (n-1)*pi/2.
struct Phase {
    double theta_big;
    double theta_small;
    int n;

    Phase(double Theta, int dim) : theta_big(Theta), n(dim) {
        if (dim < 2) throw std::invalid_argument("Phase: dimension must be >= 2");
        if (!(std::abs(Theta) < dim * std::numbers::pi / 2))
            throw std::invalid_argument("Phase: |Theta| must be below n*pi/2");
        theta_small = Theta - (dim - 1) * std::numbers::pi / 2;
    }

    static double critical(int dim) { return (dim - 2) * std::numbers::pi / 2; }
};

} // namespace slc
