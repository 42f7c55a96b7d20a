#include "slc/jacobi.hpp"

#include <cmath>
#include <numbers>

#include "slc/symfunc.hpp"

namespace slc {

bool diag_criterion(const std::vector<double>& a, const std::vector<double>& b) {
    return diag_criterion_value(a, b) >= 0;
}

double diag_criterion_value(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("diag_criterion: a and b must match and be nonempty");
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0))
            throw std::domain_error("diag_criterion: coefficients a_i must be positive");
        s += (b[i] / a[i]) * (b[i] / a[i]);
    }
    return 1.0 - s;
}

double trig_sin_sum(const KappaVector& kappa) {
    double s = 0;
    for (double k : kappa.values()) s += k / (1.0 + k * k);
    return s;
}

double inverse_kappa_sum(const KappaVector& kappa) {
    double s = 0;
    for (double k : kappa.values()) {
        if (k == 0)
            throw std::domain_error("inverse_kappa_sum: zero curvature entry");
        s += 1.0 / k;
    }
    return s;
}

void SymTensor3::set_sym(int i, int j, int k, double v) {
    a_[idx(i, j, k)] = v;
    a_[idx(i, k, j)] = v;
    a_[idx(j, i, k)] = v;
    a_[idx(j, k, i)] = v;
    a_[idx(k, i, j)] = v;
    a_[idx(k, j, i)] = v;
}

void SymTensor3::scale(double t) {
    for (double& x : a_) x *= t;
}

double SymTensor3::max_abs() const {
    double m = 0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
}

namespace {

std::vector<double> g_diag(const KappaVector& kappa) {
    std::vector<double> G(static_cast<size_t>(kappa.n()));
    for (int i = 0; i < kappa.n(); ++i) G[i] = 1.0 / (1.0 + kappa[i] * kappa[i]);
    return G;
}

// Riesz representer of the constraint L_g(T) = sum_i G^ii T_iig inside the
// space of fully symmetric tensors.
SymTensor3 representer(const std::vector<double>& G, int gamma) {
    int n = static_cast<int>(G.size());
    SymTensor3 B(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = 0;
                if (i == j && k == gamma) v += G[i];
                if (i == k && j == gamma) v += G[i];
                if (j == k && i == gamma) v += G[j];
                if (v != 0) B.set_sym(i, j, k, v / 3.0); // entry is permutation invariant
            }
    return B;
}

double dot3(const SymTensor3& s, const SymTensor3& t) {
    int n = s.n();
    double acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) acc += s(i, j, k) * t(i, j, k);
    return acc;
}

} // namespace

double third_form_constraint_residual(const KappaVector& kappa, const SymTensor3& h3) {
    std::vector<double> G = g_diag(kappa);
    int n = kappa.n();
    double worst = 0;
    for (int gamma = 0; gamma < n; ++gamma) {
        double c = 0;
        for (int i = 0; i < n; ++i) c += G[i] * h3(i, i, gamma);
        worst = std::max(worst, std::abs(c));
    }
    return worst;
}

SymTensor3 project_third_form(const KappaVector& kappa, const SymTensor3& raw) {
    int n = kappa.n();
    std::vector<double> G = g_diag(kappa);
    std::vector<SymTensor3> B;
    B.reserve(static_cast<size_t>(n));
    for (int gamma = 0; gamma < n; ++gamma) B.push_back(representer(G, gamma));

    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd L(n);
    for (int g = 0; g < n; ++g) {
        for (int d = 0; d < n; ++d) M(g, d) = dot3(B[g], B[d]);
        double c = 0;
        for (int i = 0; i < n; ++i) c += G[i] * raw(i, i, g);
        L[g] = c;
    }
    Eigen::VectorXd coef = M.ldlt().solve(L);

    SymTensor3 out = raw;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                double v = raw(i, j, k);
                for (int g = 0; g < n; ++g) v -= coef[g] * B[g](i, j, k);
                out.set_sym(i, j, k, v);
            }
    return out;
}

ThirdFormSample sample_third_form(const KappaVector& kappa, Rng& rng) {
    int n = kappa.n();
    SymTensor3 raw(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) raw.set_sym(i, j, k, rng.uniform(-1.0, 1.0));
    return ThirdFormSample{kappa, project_third_form(kappa, raw)};
}

double jacobi_Q(const ThirdFormSample& sample, double epsilon, double J) {
    const KappaVector& kappa = sample.kappa;
    const SymTensor3& h3 = sample.h3;
    int n = kappa.n();
    std::vector<double> G = g_diag(kappa);

    double H = 0, A2 = 0;
    for (double k : kappa.values()) {
        H += k;
        A2 += k * k;
    }
    if (!(H + J > 0))
        throw std::domain_error("jacobi_Q: H + J must be positive");

    double quad = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double gij = G[i] * G[j] * (kappa[i] + kappa[j]);
            if (gij == 0) continue;
            for (int k = 0; k < n; ++k) {
                double v = h3(i, j, k);
                quad += gij * v * v;
            }
        }

    double grad = 0;
    for (int i = 0; i < n; ++i) {
        double hi = 0;
        for (int k = 0; k < n; ++k) hi += h3(k, k, i);
        grad += G[i] * hi * hi;
    }

    double tail = 0, tail2 = 0;
    for (int i = 0; i < n; ++i) {
        tail += G[i] * kappa[i];
        tail2 += G[i] * kappa[i] * kappa[i];
    }
    return quad - (1.0 + epsilon) * grad / (H + J) + A2 * tail - H * tail2;
}

namespace {

KappaVector draw_kappa(int n, JacobiMode mode, const Phase& phase, double pin,
                       Rng& rng) {
    if (mode == JacobiMode::critical) {
        if (pin > 0) return make_on_phase_pinned(n, phase, pin, rng);
        return make_on_phase(n, phase, rng);
    }
    if (pin > 0) {
        if (pin <= 1.0) {
            // all angles capped at arctan(1): only phases up to n*pi/4 reach it
            Phase low(n * std::numbers::pi / 8, n);
            return make_on_phase_convex_pinned(n, low, pin, rng);
        }
        return make_on_phase_convex_pinned(n, phase, pin, rng);
    }
    return make_on_phase_convex(n, phase, rng);
}

} // namespace

JacobiReport verify_jacobi(int n, JacobiMode mode, double theta, long samples,
                           double epsilon, double J, std::uint64_t seed) {
    double critical = Phase::critical(n);
    if (mode == JacobiMode::critical) {
        if (std::abs(theta - critical) > 1e-12)
            throw std::domain_error(
                "verify_jacobi: only the critical phase Theta = (n-2)pi/2 carries the "
                "inequality; the general supercritical case is unsupported (use convex "
                "mode for nonnegative curvatures)");
    } else {
        if (!(theta > 0 && theta < n * std::numbers::pi / 2))
            throw std::domain_error("verify_jacobi: convex mode needs 0 < Theta < n*pi/2");
    }

    Phase phase(theta, n);
    Rng rng(seed);

    // kappa_1 magnitude buckets {O(1), 1e3, 1e6} crossed with |h3| buckets.
    // Pinning kappa_1 = 1 is infeasible at the critical phase for n >= 4
    // (the remaining angles cannot reach Theta), so that cell falls back to
    // unpinned draws.
    std::vector<double> kappa_pins = {1.0, 1e3, 1e6};
    if (mode == JacobiMode::critical && n >= 4) kappa_pins[0] = 0.0;
    const std::vector<double> h3_scales = {1.0, 1e3, 1e6};

    JacobiReport rep;
    rep.n = n;
    rep.mode = mode;
    rep.theta = theta;
    rep.epsilon = epsilon;
    rep.J = J;
    rep.samples = samples;
    rep.min_slack = std::numeric_limits<double>::infinity();
    rep.rows.reserve(static_cast<size_t>(samples));

    for (long s = 0; s < samples; ++s) {
        double pin = kappa_pins[static_cast<size_t>(s) % kappa_pins.size()];
        double h3s = h3_scales[static_cast<size_t>(s / 3) % h3_scales.size()];
        KappaVector kappa = draw_kappa(n, mode, phase, pin, rng);
        ThirdFormSample sample = sample_third_form(kappa, rng);
        sample.h3.scale(h3s);
        double H = 0;
        for (double k : kappa.values()) H += k;
        double slack = jacobi_Q(sample, epsilon, J) + n * (H + J);
        rep.min_slack = std::min(rep.min_slack, slack);
        if (slack < -kJacobiSlackTol) ++rep.failures;
        rep.rows.push_back({s, kappa.values(), slack});
    }
    return rep;
}

} // namespace slc
