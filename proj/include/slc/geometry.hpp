#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>

#include "slc/grid.hpp"
#include "slc/kappa.hpp"

namespace slc {

/// Pointwise geometry of a graph hypersurface at one interior grid point.
/// kappa are the eigenvalues of the symmetric pencil g^{-1/2} h g^{-1/2}
/// (same spectrum as g^{-1} h), sorted descending. G is the metric of the
/// Gauss-map lift in a g-orthonormal frame: G = I + S^2, det G = prod(1+k^2).
struct CurvaturePoint {
    double W = 1;
    Eigen::VectorXd Du;
    Eigen::MatrixXd D2u;
    Eigen::MatrixXd g, ginv;
    Eigen::MatrixXd h;     // h_ij = u_ij / W
    Eigen::MatrixXd shape; // S = g^{-1/2} h g^{-1/2}
    std::vector<double> kappa;
    double H = 0;    // sigma_1
    double A2 = 0;   // sum kappa_i^2
    double V = 1;    // sqrt(prod(1 + kappa_i^2)) = sqrt(det G)
    double detG = 1;
    Eigen::MatrixXd G; // I + S^2
};

class CurvatureField {
public:
    CurvatureField(GraphPatch patch, std::vector<CurvaturePoint> pts,
                   std::vector<char> valid)
        : patch_(std::move(patch)), pts_(std::move(pts)), valid_(std::move(valid)) {}

    const GraphPatch& patch() const { return patch_; }
    bool valid(size_t f) const { return valid_[f] != 0; }
    const CurvaturePoint& at(size_t f) const { return pts_[f]; }

private:
    GraphPatch patch_;
    std::vector<CurvaturePoint> pts_;
    std::vector<char> valid_;
};

/// Build the field on the 1-ring interior. Requires >= 3 points per axis.
CurvatureField curvature_field(const GraphPatch& patch);

/// Pointwise geometry from stencil values (shared kernel; also the solver's
/// local residual path). f must be an interior flat index.
CurvaturePoint point_geometry(const GraphPatch& patch, size_t f);

/// Weingarten map h_i^j = D_i(u_j / W) in Cartesian coordinates, on the
/// 2-ring interior (one ring for u_j/W, another for its derivative).
MatrixGrid weingarten_field(const GraphPatch& patch);

/// Mean-curvature bound of the Gauss-map lift:
/// (n+2) sqrt(sum kappa_i^2 / (1 + kappa_i^2)); always <= (n+2) sqrt(n).
double lift_mean_curvature_norm(const KappaVector& kappa);

/// b = log(H + J); domain error when H + J <= 0.
double b_quantity(const KappaVector& kappa, double J);

/// Default J(n) = 4 n^3.
double default_J(int n);

inline double b_quantity(const KappaVector& kappa) {
    return b_quantity(kappa, default_J(kappa.n()));
}

/// Default epsilon for the Jacobi inequality.
inline constexpr double kDefaultEpsilon = 1.0 / 17.0;

/// The distance function r^2 = |X - X0|^2 + 2 - 2 <nu, nu0> of the lift and
/// the maximum of G^{ij} r_i r_j (chart gradient contracted with the chart
/// lift metric g + h g^{-1} h) over points with r > spacing.
struct DistanceClaim {
    std::vector<double> r;       // full grid, NaN where u-gradient undefined
    double max_gradient_form = 0;
    long points_checked = 0;
};

DistanceClaim anisotropic_distance(const CurvatureField& field,
                                   const std::vector<int>& base_index);

/// Midpoint-rule integral of V over grid points within `radius` of the
/// domain center.
double area_integral(const CurvatureField& field, double radius);

/// CSV: coordinates, u, W, kappa_1..kappa_n, H, V; one row per valid point.
void write_curvature_csv(const CurvatureField& field, std::ostream& os);

} // namespace slc
