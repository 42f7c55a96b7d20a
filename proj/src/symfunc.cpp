#include "slc/symfunc.hpp"

#include <cmath>
#include <numbers>

namespace slc {

namespace {

void check_symmetric(const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("newton_tensor: matrix must be square");
    double scale = 1.0 + h.cwiseAbs().maxCoeff();
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("newton_tensor: matrix must be symmetric");
}

double sigma_recurrence(const std::vector<double>& kappa, int k) {
    std::vector<double> e(static_cast<size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    int used = 0;
    for (double x : kappa) {
        ++used;
        for (int j = std::min(used, k); j >= 1; --j) e[j] += x * e[j - 1];
    }
    return e[k];
}

double sigma_enum_rec(const std::vector<double>& v, int start, int k, double prod) {
    if (k == 0) return prod;
    double s = 0;
    for (int i = start; i <= static_cast<int>(v.size()) - k; ++i)
        s += sigma_enum_rec(v, i + 1, k - 1, prod * v[i]);
    return s;
}

} // namespace

double sigma_k_enum(const std::vector<double>& kappa, int k) {
    if (k < 0 || k > static_cast<int>(kappa.size()))
        throw std::invalid_argument("sigma_k_enum: k out of range");
    if (kappa.size() > 20)
        throw std::invalid_argument("sigma_k_enum: enumeration limited to n <= 20");
    return sigma_enum_rec(kappa, 0, k, 1.0);
}

std::vector<double> sigma_all(const std::vector<double>& kappa) {
    int n = static_cast<int>(kappa.size());
    std::vector<double> e(static_cast<size_t>(n) + 1, 0.0);
    e[0] = 1.0;
    int used = 0;
    for (double x : kappa) {
        ++used;
        for (int j = used; j >= 1; --j) e[j] += x * e[j - 1];
    }
    return e;
}

double sigma_k(const KappaVector& kappa, int k) {
    if (k < 0 || k > kappa.n())
        throw std::invalid_argument("sigma_k: k out of range");
    if (kappa.n() <= 12) return sigma_enum_rec(kappa.values(), 0, k, 1.0);
    return sigma_recurrence(kappa.values(), k);
}

bool in_gamma_k(const KappaVector& kappa, int k) {
    if (k < 1 || k > kappa.n())
        throw std::invalid_argument("in_gamma_k: k out of range");
    std::vector<double> sig = sigma_all(kappa.values());
    for (int j = 1; j <= k; ++j)
        if (!(sig[j] > 0)) return false;
    return true;
}

Eigen::MatrixXd newton_tensor_matrix(const Eigen::MatrixXd& m, int k) {
    int n = static_cast<int>(m.rows());
    if (k < 0 || k > n) return Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n, n);
    for (int j = 1; j <= k; ++j) {
        Eigen::MatrixXd Tm = T * m;
        double sig = Tm.trace() / j;
        T = sig * Eigen::MatrixXd::Identity(n, n) - Tm;
    }
    return T;
}

NewtonTensor newton_tensor(const Eigen::MatrixXd& h, int k) {
    check_symmetric(h);
    NewtonTensor out;
    out.k = k;
    out.entries = newton_tensor_matrix(h, k);
    // symmetric input keeps T_k symmetric; clean up rounding
    out.entries = 0.5 * (out.entries + out.entries.transpose()).eval();
    return out;
}

double divergence_free_check(const MatrixGrid& w, int k) {
    int n = w.n;
    int ring = w.ring + 1; // one more ring for the tensor derivative
    for (int a = 0; a < n; ++a)
        if (w.ext[a] < 2 * ring + 1)
            throw std::domain_error("divergence_free_check: patch too small for the stencil");

    // T_k at every valid point of the Weingarten grid
    std::vector<Eigen::MatrixXd> tk(w.m.size());
    std::vector<int> idx = first_index(n);
    do {
        if (w.valid(idx)) tk[w.flat(idx)] = newton_tensor_matrix(w.m[w.flat(idx)], k);
    } while (next_index(idx, w.ext));

    double worst = 0;
    idx = first_index(n);
    do {
        bool ok = true;
        for (int a = 0; a < n; ++a)
            if (idx[a] < ring || idx[a] >= w.ext[a] - ring) ok = false;
        if (!ok) continue;
        for (int i = 0; i < n; ++i) {
            double div = 0;
            for (int j = 0; j < n; ++j) {
                std::vector<int> plus = idx, minus = idx;
                ++plus[j];
                --minus[j];
                div += (tk[w.flat(plus)](i, j) - tk[w.flat(minus)](i, j)) / (2 * w.spacing);
            }
            worst = std::max(worst, std::abs(div));
        }
    } while (next_index(idx, w.ext));
    return worst;
}

double slc_residual(const KappaVector& kappa, const Phase& phase) {
    double s = 0;
    for (double x : kappa.values()) s += std::atan(x);
    return s - phase.theta_big;
}

double slc_algebraic_big(const std::vector<double>& sig, const Phase& phase) {
    int n = static_cast<int>(sig.size()) - 1;
    double odd = 0, even = 0;
    double sign = 1;
    for (int j = 1; j <= n; j += 2, sign = -sign) odd += sign * sig[j];
    sign = 1;
    for (int j = 0; j <= n; j += 2, sign = -sign) even += sign * sig[j];
    return std::cos(phase.theta_big) * odd - std::sin(phase.theta_big) * even;
}

double slc_algebraic_small(const std::vector<double>& sig, const Phase& phase) {
    int n = static_cast<int>(sig.size()) - 1;
    double sa = 0, sb = 0;
    double sign = 1;
    for (int j = n; j >= 0; j -= 2, sign = -sign) sa += sign * sig[j];
    sign = 1;
    for (int j = n - 1; j >= 0; j -= 2, sign = -sign) sb += sign * sig[j];
    return std::cos(phase.theta_small) * sa - std::sin(phase.theta_small) * sb;
}

double slc_algebraic(const KappaVector& kappa, const Phase& phase) {
    std::vector<double> sig = sigma_all(kappa.values());
    double big = slc_algebraic_big(sig, phase);
    double small = slc_algebraic_small(sig, phase);
    double scale = 1.0;
    for (double s : sig) scale += std::abs(s);
    if (std::abs(big - small) > 1e-10 * scale)
        throw std::logic_error("slc_algebraic: Theta-form and theta-form disagree");
    return big;
}

VolumeFactor volume_factor(const KappaVector& kappa, const Phase& phase) {
    std::vector<double> sig = sigma_all(kappa.values());
    int n = kappa.n();
    VolumeFactor out{0, 0, 0};
    double sign = 1;
    for (int j = 0; j <= n; j += 2, sign = -sign) out.V1 += sign * sig[j];
    sign = 1;
    for (int j = 1; j <= n; j += 2, sign = -sign) out.V2 += sign * sig[j];
    out.V = std::cos(phase.theta_big) * out.V1 + std::sin(phase.theta_big) * out.V2;
    return out;
}

Eigen::MatrixXd linearization(const Eigen::MatrixXd& h, const Phase& phase) {
    check_symmetric(h);
    int n = static_cast<int>(h.rows());
    // The subtraction recursion for T_k loses ~|kappa_1| digits per level on
    // the small diagonal entries, so go through the eigenbasis instead:
    // [T_k] = Q diag(sigma_k(lambda | i)) Q^T with deflated symmetric sums.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::VectorXd& lam = es.eigenvalues();
    Eigen::VectorXd fdiag(n);
    std::vector<double> rest(static_cast<size_t>(n) - 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0, t = 0; j < n; ++j)
            if (j != i) rest[static_cast<size_t>(t++)] = lam[j];
        std::vector<double> sig = sigma_all(rest);
        double even = 0, odd = 0, se = 1, so = 1;
        for (int j = 0; j <= n - 1; ++j) {
            if (j % 2 == 0) {
                even += se * sig[static_cast<size_t>(j)];
                se = -se;
            } else {
                odd += so * sig[static_cast<size_t>(j)];
                so = -so;
            }
        }
        fdiag[i] = std::cos(phase.theta_big) * even + std::sin(phase.theta_big) * odd;
    }
    Eigen::MatrixXd F =
        es.eigenvectors() * fdiag.asDiagonal() * es.eigenvectors().transpose();
    return 0.5 * (F + F.transpose());
}

bool is_on_phase(const KappaVector& kappa, const Phase& phase, double tol) {
    return std::abs(slc_residual(kappa, phase)) < tol;
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

KappaVector finish_sample(std::vector<double>& theta) {
    std::vector<double> kappa(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) kappa[i] = std::tan(theta[i]);
    return KappaVector(kappa);
}

[[noreturn]] void sampling_failure(const char* who) {
    throw std::runtime_error(std::string(who) +
                             ": rejection sampling failed after the draw budget");
}

} // namespace

KappaVector make_on_phase(int n, const Phase& phase, Rng& rng, double eps_theta,
                          long max_draws) {
    std::vector<double> theta(static_cast<size_t>(n));
    for (long t = 0; t < max_draws; ++t) {
        double sum = 0;
        for (int i = 0; i + 1 < n; ++i) {
            theta[i] = rng.uniform(-kHalfPi + eps_theta, kHalfPi - eps_theta);
            sum += theta[i];
        }
        double last = phase.theta_big - sum;
        if (std::abs(last) < kHalfPi - eps_theta) {
            theta[n - 1] = last;
            return finish_sample(theta);
        }
    }
    sampling_failure("make_on_phase");
}

KappaVector make_on_phase_pinned(int n, const Phase& phase, double kappa1,
                                 Rng& rng, double eps_theta, long max_draws) {
    std::vector<double> theta(static_cast<size_t>(n));
    double pin = std::atan(kappa1);
    for (long t = 0; t < max_draws; ++t) {
        theta[0] = pin;
        double sum = pin;
        bool ok = true;
        for (int i = 1; i + 1 < n; ++i) {
            theta[i] = rng.uniform(-kHalfPi + eps_theta, std::min(pin, kHalfPi - eps_theta));
            sum += theta[i];
        }
        double last = phase.theta_big - sum;
        if (last > pin || std::abs(last) >= kHalfPi - eps_theta) ok = false;
        if (ok) {
            theta[n - 1] = last;
            return finish_sample(theta);
        }
    }
    sampling_failure("make_on_phase_pinned");
}

KappaVector make_on_phase_convex(int n, const Phase& phase, Rng& rng,
                                 double eps_theta, long max_draws) {
    std::vector<double> theta(static_cast<size_t>(n));
    for (long t = 0; t < max_draws; ++t) {
        double sum = 0;
        for (int i = 0; i + 1 < n; ++i) {
            theta[i] = rng.uniform(0.0, kHalfPi - eps_theta);
            sum += theta[i];
        }
        double last = phase.theta_big - sum;
        if (last >= 0 && last < kHalfPi - eps_theta) {
            theta[n - 1] = last;
            return finish_sample(theta);
        }
    }
    sampling_failure("make_on_phase_convex");
}

KappaVector make_on_phase_convex_pinned(int n, const Phase& phase, double kappa1,
                                        Rng& rng, double eps_theta, long max_draws) {
    std::vector<double> theta(static_cast<size_t>(n));
    double pin = std::atan(kappa1);
    for (long t = 0; t < max_draws; ++t) {
        theta[0] = pin;
        double sum = pin;
        for (int i = 1; i + 1 < n; ++i) {
            theta[i] = rng.uniform(0.0, std::min(pin, kHalfPi - eps_theta));
            sum += theta[i];
        }
        double last = phase.theta_big - sum;
        if (last >= 0 && last <= pin && last < kHalfPi - eps_theta) {
            theta[n - 1] = last;
            return finish_sample(theta);
        }
    }
    sampling_failure("make_on_phase_convex_pinned");
}

} // namespace slc
