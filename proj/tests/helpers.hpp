#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "slc/kappa.hpp"
#include "slc/rng.hpp"
#include "slc/symfunc.hpp"

namespace slc::test {

inline constexpr double kPi = std::numbers::pi;

inline KappaVector random_kappa(int n, Rng& rng, double eps_theta = 1e-3) {
    std::vector<double> v(static_cast<size_t>(n));
    for (double& x : v)
        x = std::tan(rng.uniform(-kPi / 2 + eps_theta, kPi / 2 - eps_theta));
    return KappaVector(v);
}

inline Eigen::MatrixXd random_symmetric(int n, Rng& rng, double amp = 2.0) {
    Eigen::MatrixXd h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            h(i, j) = rng.uniform(-amp, amp);
            h(j, i) = h(i, j);
        }
    return h;
}

inline KappaVector random_gamma(int n, Rng& rng) {
    for (int tries = 0; tries < 1000000; ++tries) {
        std::vector<double> v(static_cast<size_t>(n));
        for (double& x : v) x = rng.uniform(-1.0, 3.0);
        KappaVector kappa(v);
        if (in_gamma_k(kappa, n - 1)) return kappa;
    }
    throw std::runtime_error("random_gamma: rejection failed");
}

// phases reachable by the rejection sampler (it starves near n*pi/2)
inline double onphase_bound(int n) {
    return std::min(n * kPi / 2 - 0.1, Phase::critical(n) + kPi / 2 - 0.02);
}

} // namespace slc::test
