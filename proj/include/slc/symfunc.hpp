#pragma once

#include <Eigen/Dense>

#include "slc/grid.hpp"
#include "slc/kappa.hpp"
#include "slc/rng.hpp"

namespace slc {

// ---------------------------------------------------------------------------
// Elementary symmetric functions and cones
// ---------------------------------------------------------------------------

/// sigma_k(kappa): sum of products over strictly increasing index tuples,
/// sigma_0 = 1. Enumerates directly for n <= 12, otherwise uses the stable
/// prefix-product convolution.
double sigma_k(const KappaVector& kappa, int k);

/// All of sigma_0 .. sigma_n by the convolution recurrence.
std::vector<double> sigma_all(const std::vector<double>& kappa);

/// Direct enumeration (reference path, n <= 20 or it refuses).
double sigma_k_enum(const std::vector<double>& kappa, int k);

/// Gamma_k cone membership: sigma_1 > 0, ..., sigma_k > 0 (strict).
bool in_gamma_k(const KappaVector& kappa, int k);

// ---------------------------------------------------------------------------
// Newton transformation tensors
// ---------------------------------------------------------------------------

/// Newton transformation tensor of order k in an orthonormal frame
/// (g = identity, so the (1,1) and (2,0) representations coincide).
struct NewtonTensor {
    int k = 0;
    Eigen::MatrixXd entries;
};

/// T_0 = I, T_k = sigma_k I - T_{k-1} h with sigma_k = tr(T_{k-1} h)/k.
/// Zero tensor for k outside {0, ..., n}. Input must be symmetric.
NewtonTensor newton_tensor(const Eigen::MatrixXd& h, int k);

/// Same recursion for a general (not necessarily symmetric) matrix; used for
/// the Weingarten map in the graph chart.
Eigen::MatrixXd newton_tensor_matrix(const Eigen::MatrixXd& m, int k);

/// Max over valid grid points of |sum_j d_j [T_k]_i^j| for a Weingarten field
/// h_i^j = D_i(u_j / W) given on a grid; central differences.
double divergence_free_check(const MatrixGrid& weingarten, int k);

// ---------------------------------------------------------------------------
// The curvature operator in its three forms
// ---------------------------------------------------------------------------

/// sum_i arctan(kappa_i) - Theta.
double slc_residual(const KappaVector& kappa, const Phase& phase);

/// Algebraic form F(kappa) = cos(Theta) sum (-1)^k sigma_{2k+1}
///                          - sin(Theta) sum (-1)^k sigma_{2k}.
/// Also evaluates the shifted form in theta = Theta - (n-1)pi/2 and requires
/// agreement of the two to 1e-10 (they are equal identically).
double slc_algebraic(const KappaVector& kappa, const Phase& phase);

/// The two forms separately (exposed for the identity suites).
double slc_algebraic_big(const std::vector<double>& sig, const Phase& phase);
double slc_algebraic_small(const std::vector<double>& sig, const Phase& phase);

struct VolumeFactor {
    double V;  // cos(Theta) V1 + sin(Theta) V2
    double V1; // sum (-1)^k sigma_2k
    double V2; // sum (-1)^k sigma_{2k+1}
};

/// V1, V2 and the volume factor V. On-phase kappa satisfy V >= 1 and
/// V^2 = prod(1 + kappa_i^2).
VolumeFactor volume_factor(const KappaVector& kappa, const Phase& phase);

/// Linearization F^{ij} = cos(Theta) (T_0 - T_2 + ...) + sin(Theta) (T_1 - T_3 + ...)
/// in an orthonormal frame. Positive definite on-phase in Gamma_{n-1}, with
/// F^{iq} G_{qj} = V delta_ij for G = I + h^2.
Eigen::MatrixXd linearization(const Eigen::MatrixXd& h, const Phase& phase);

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// Random on-phase curvature vector: draws theta_1..theta_{n-1} uniformly,
/// solves for theta_n, rejects until |theta_n| < pi/2, returns tan(theta)
/// sorted. Angles are kept eps_theta away from +-pi/2 so the sigma identities
/// stay well conditioned in doubles. Throws after max_draws rejections.
KappaVector make_on_phase(int n, const Phase& phase, Rng& rng,
                          double eps_theta = 1e-3,
                          long max_draws = 1000000);

/// Variant with kappa_1 pinned: theta_1 = arctan(kappa1) and the draw is
/// rejected unless kappa1 remains the largest entry.
KappaVector make_on_phase_pinned(int n, const Phase& phase, double kappa1,
                                 Rng& rng, double eps_theta = 1e-3,
                                 long max_draws = 1000000);

/// Convex variant: all kappa_i >= 0 (angles drawn in [0, pi/2)).
KappaVector make_on_phase_convex(int n, const Phase& phase, Rng& rng,
                                 double eps_theta = 1e-3,
                                 long max_draws = 1000000);

KappaVector make_on_phase_convex_pinned(int n, const Phase& phase, double kappa1,
                                        Rng& rng, double eps_theta = 1e-3,
                                        long max_draws = 1000000);

/// On-phase predicate used by the conditional invariants.
bool is_on_phase(const KappaVector& kappa, const Phase& phase, double tol = 1e-9);

} // namespace slc
