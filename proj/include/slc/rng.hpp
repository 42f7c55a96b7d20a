#pragma once

#include <cstdint>
#include <random>

namespace slc {

// Deterministic RNG wrapper. Distributions are implemented here instead of
// through std::uniform_real_distribution so that a fixed seed produces the
// same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // uniform in [0, 1)
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // uniform integer in [0, m)
    std::uint64_t index(std::uint64_t m) { return eng_() % m; }

private:
    std::mt19937_64 eng_;
};

} // namespace slc
