#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "slc/kappa.hpp"
#include "slc/rng.hpp"

namespace slc {

/// Diagonalization criterion: Q(x) = sum a_i^2 x_i^2 - (sum b_i x_i)^2 >= 0
/// iff 1 - sum b_i^2 / a_i^2 >= 0. All a_i must be positive.
bool diag_criterion(const std::vector<double>& a, const std::vector<double>& b);
double diag_criterion_value(const std::vector<double>& a, const std::vector<double>& b);

/// sum kappa_i / (1 + kappa_i^2); nonnegative on the critical phase.
double trig_sin_sum(const KappaVector& kappa);

/// sum 1 / kappa_i; nonpositive when Theta >= (n-2)pi/2 and kappa_n < 0.
/// Domain error on a zero entry.
double inverse_kappa_sum(const KappaVector& kappa);

/// Fully symmetric third-order tensor h_{ijk} (covariant derivative of the
/// second fundamental form in a diagonal frame), flat n^3 storage.
class SymTensor3 {
public:
    explicit SymTensor3(int n) : n_(n), a_(static_cast<size_t>(n) * n * n, 0.0) {}

    int n() const { return n_; }
    double operator()(int i, int j, int k) const { return a_[idx(i, j, k)]; }
    /// Sets the value on all six permutations of (i,j,k).
    void set_sym(int i, int j, int k, double v);
    void scale(double t);
    double max_abs() const;

private:
    size_t idx(int i, int j, int k) const {
        return (static_cast<size_t>(i) * n_ + j) * n_ + k;
    }
    int n_;
    std::vector<double> a_;
};

/// On-phase curvature plus a symmetric third form satisfying the
/// differentiated-equation constraint sum_ij G^{ij} h_{ij gamma} = 0.
struct ThirdFormSample {
    KappaVector kappa;
    SymTensor3 h3;
};

/// Residual of the constraint: max_gamma |sum_i G^{ii} h_{ii gamma}|.
double third_form_constraint_residual(const KappaVector& kappa, const SymTensor3& h3);

/// Projects a fully symmetric tensor onto the constraint set while keeping
/// full symmetry (orthogonal projection in the space of symmetric tensors).
SymTensor3 project_third_form(const KappaVector& kappa, const SymTensor3& raw);

/// Random constrained sample; entries Uniform(-1,1) before projection.
ThirdFormSample sample_third_form(const KappaVector& kappa, Rng& rng);

/// The quantity Q(eps) = (H+J)(Lap_G b - eps |grad_G b|^2) evaluated in the
/// diagonal frame:
///   sum_ijk G^ii G^jj (k_i + k_j) h_ijk^2
///   - (1+eps)/(H+J) sum_i G^ii (sum_k h_kki)^2
///   + |A|^2 sum_i G^ii k_i - H sum_i G^ii k_i^2.
double jacobi_Q(const ThirdFormSample& sample, double epsilon, double J);

enum class JacobiMode { critical, convex };

struct JacobiReport {
    int n = 0;
    JacobiMode mode = JacobiMode::critical;
    double theta = 0;
    double epsilon = 0;
    double J = 0;
    long samples = 0;
    double min_slack = 0; // min over samples of Q + n(H+J)
    long failures = 0;    // slack < -1e-8
    struct Row {
        long id;
        std::vector<double> kappa;
        double slack;
    };
    std::vector<Row> rows;
};

/// Samples constrained third forms over the mode's curvature distribution
/// (magnitude buckets kappa_1 ~ O(1)/1e3/1e6 crossed with |h3| in {1,1e3,1e6})
/// and reports the minimum slack Q + n(H+J). Critical mode requires
/// theta == (n-2)pi/2; anything else is a domain error (the supercritical
/// case carries no guarantee).
JacobiReport verify_jacobi(int n, JacobiMode mode, double theta, long samples,
                           double epsilon, double J, std::uint64_t seed);

inline constexpr double kJacobiSlackTol = 1e-8;

} // namespace slc
