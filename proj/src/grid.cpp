#include "slc/grid.hpp"

#include <cmath>

namespace slc {

GraphPatch::GraphPatch(int n, std::vector<double> origin, double spacing,
                       std::vector<int> extents)
    : n_(n), origin_(std::move(origin)), spacing_(spacing), ext_(std::move(extents)) {
    if (n < 1 || origin_.size() != static_cast<size_t>(n) ||
        ext_.size() != static_cast<size_t>(n))
        throw std::invalid_argument("GraphPatch: inconsistent dimensions");
    if (!(spacing > 0)) throw std::invalid_argument("GraphPatch: spacing must be positive");
    size_t total = 1;
    for (int e : ext_) {
        if (e < 1) throw std::invalid_argument("GraphPatch: empty axis");
        total *= static_cast<size_t>(e);
    }
    stride_.assign(n_, 1);
    for (int a = n_ - 2; a >= 0; --a)
        stride_[a] = stride_[a + 1] * ext_[a + 1];
    u_.assign(total, 0.0);
}

GraphPatch GraphPatch::box(int n, const std::vector<double>& center,
                           double halfwidth, double spacing) {
    int cells = static_cast<int>(std::floor(halfwidth / spacing + 1e-9));
    if (cells < 1) throw std::invalid_argument("GraphPatch::box: box too small");
    std::vector<double> origin(n);
    for (int a = 0; a < n; ++a) origin[a] = center[a] - cells * spacing;
    return GraphPatch(n, origin, spacing, std::vector<int>(n, 2 * cells + 1));
}

std::vector<double> GraphPatch::point(const std::vector<int>& idx) const {
    std::vector<double> x(n_);
    for (int a = 0; a < n_; ++a) x[a] = coord(a, idx[a]);
    return x;
}

size_t GraphPatch::flat(const std::vector<int>& idx) const {
    size_t f = 0;
    for (int a = 0; a < n_; ++a) f += static_cast<size_t>(idx[a]) * stride_[a];
    return f;
}

std::vector<int> GraphPatch::unflat(size_t f) const {
    std::vector<int> idx(n_);
    for (int a = 0; a < n_; ++a) {
        idx[a] = static_cast<int>(f / stride_[a]);
        f %= stride_[a];
    }
    return idx;
}

bool GraphPatch::interior(const std::vector<int>& idx, int ring) const {
    for (int a = 0; a < n_; ++a)
        if (idx[a] < ring || idx[a] >= ext_[a] - ring) return false;
    return true;
}

std::vector<int> GraphPatch::center_index() const {
    std::vector<int> idx(n_);
    for (int a = 0; a < n_; ++a) idx[a] = ext_[a] / 2;
    return idx;
}

double GraphPatch::osc_u() const {
    double lo = u_[0], hi = u_[0];
    for (double v : u_) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

size_t MatrixGrid::flat(const std::vector<int>& idx) const {
    size_t f = 0;
    for (int a = 0; a < n; ++a) {
        f = f * static_cast<size_t>(ext[a]) + static_cast<size_t>(idx[a]);
    }
    return f;
}

bool MatrixGrid::valid(const std::vector<int>& idx) const {
    for (int a = 0; a < n; ++a)
        if (idx[a] < ring || idx[a] >= ext[a] - ring) return false;
    return true;
}

bool next_index(std::vector<int>& idx, const std::vector<int>& ext) {
    for (int a = static_cast<int>(idx.size()) - 1; a >= 0; --a) {
        if (++idx[a] < ext[a]) return true;
        idx[a] = 0;
    }
    return false;
}

std::vector<int> first_index(int n) { return std::vector<int>(n, 0); }

double d1(const GraphPatch& p, size_t f, int axis) {
    return (p.u(p.shift(f, axis, 1)) - p.u(p.shift(f, axis, -1))) / (2 * p.spacing());
}

double d2(const GraphPatch& p, size_t f, int a, int b) {
    double h = p.spacing();
    if (a == b)
        return (p.u(p.shift(f, a, 1)) - 2 * p.u(f) + p.u(p.shift(f, a, -1))) / (h * h);
    size_t pp = p.shift(p.shift(f, a, 1), b, 1);
    size_t pm = p.shift(p.shift(f, a, 1), b, -1);
    size_t mp = p.shift(p.shift(f, a, -1), b, 1);
    size_t mm = p.shift(p.shift(f, a, -1), b, -1);
    return (p.u(pp) - p.u(pm) - p.u(mp) + p.u(mm)) / (4 * h * h);
}

double d1_fourth(const GraphPatch& p, size_t f, int axis) {
    double h = p.spacing();
    double f1 = p.u(p.shift(f, axis, 1)), fm1 = p.u(p.shift(f, axis, -1));
    double f2 = p.u(p.shift(f, axis, 2)), fm2 = p.u(p.shift(f, axis, -2));
    return (8 * (f1 - fm1) - (f2 - fm2)) / (12 * h);
}

} // namespace slc
