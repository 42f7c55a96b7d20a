#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace slc {

/// Uniform grid of height values over a rectangular box: the discrete graph
/// hypersurface u : R^n -> R. Row-major storage, last axis fastest.
class GraphPatch {
public:
    GraphPatch(int n, std::vector<double> origin, double spacing,
               std::vector<int> extents);

    /// Box centered at `center` with half width snapped down to a multiple of
    /// the spacing, so the grid fits the box exactly.
    static GraphPatch box(int n, const std::vector<double>& center,
                          double halfwidth, double spacing);

    int n() const { return n_; }
    double spacing() const { return spacing_; }
    const std::vector<int>& extents() const { return ext_; }
    const std::vector<double>& origin() const { return origin_; }
    size_t size() const { return u_.size(); }

    double coord(int axis, int i) const { return origin_[axis] + spacing_ * i; }
    std::vector<double> point(const std::vector<int>& idx) const;

    size_t flat(const std::vector<int>& idx) const;
    std::vector<int> unflat(size_t f) const;
    /// flat index offset by +d along `axis`
    size_t shift(size_t f, int axis, int d) const {
        return f + static_cast<size_t>(d) * static_cast<size_t>(stride_[axis]);
    }

    bool interior(const std::vector<int>& idx, int ring = 1) const;

    double u(size_t f) const { return u_[f]; }
    double& u(size_t f) { return u_[f]; }
    const std::vector<double>& values() const { return u_; }
    std::vector<double>& values() { return u_; }

    /// Center grid index (extents are odd in all our constructions).
    std::vector<int> center_index() const;

    /// min over all points of spacing-normalized distance checks etc.
    double osc_u() const;

private:
    int n_;
    std::vector<double> origin_;
    double spacing_;
    std::vector<int> ext_;
    std::vector<long> stride_;
    std::vector<double> u_;
};

/// Grid of n x n matrices living on the `ring`-inset interior of a patch.
struct MatrixGrid {
    int n = 0;
    std::vector<int> ext;
    double spacing = 0;
    int ring = 0; // matrices valid where interior(idx, ring)
    std::vector<Eigen::MatrixXd> m;

    size_t flat(const std::vector<int>& idx) const;
    bool valid(const std::vector<int>& idx) const;
};

/// Iterate all multi-indices of `ext`; returns false when exhausted.
bool next_index(std::vector<int>& idx, const std::vector<int>& ext);

/// First multi-index (all zeros).
std::vector<int> first_index(int n);

// Central differences on the grid (second order).
double d1(const GraphPatch& p, size_t f, int axis);
double d2(const GraphPatch& p, size_t f, int axis_a, int axis_b);
/// Fourth-order first derivative (needs a 2-ring).
double d1_fourth(const GraphPatch& p, size_t f, int axis);

} // namespace slc
