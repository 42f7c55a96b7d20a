#include "slc/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <numbers>

#include "slc/symfunc.hpp"

namespace slc {

namespace {

// sum_i arctan(kappa_i) from the characteristic invariants of the shape
// operator: prod(1 + i*kappa_i) = V1 + i*V2, so the sum is arg(V1 + i*V2)
// up to a multiple of 2*pi. The shift is nonzero only when |sum| > pi,
// which forces all curvatures to share one sign (n <= 3).
double arctan_sum2(double s1, double s2) {
    return std::atan2(s1, 1.0 - s2);
}

double arctan_sum3(double s1, double s2, double s3) {
    double v1 = 1.0 - s2;
    double v2 = s1 - s3;
    double s = std::atan2(v2, v1);
    if (s1 > 0 && s2 > 0 && s3 > 0) {
        if (s <= 0) s += 2 * std::numbers::pi;
    } else if (s1 < 0 && s2 > 0 && s3 < 0) {
        if (s >= 0) s -= 2 * std::numbers::pi;
    }
    return s;
}

// Curvature residual at an interior node, allocation free for n = 2, 3.
double node_residual(const GraphPatch& p, size_t f, double theta) {
    const int n = p.n();
    const double h = p.spacing();
    double Du[3], D2[3][3];
    for (int a = 0; a < n; ++a) {
        Du[a] = (p.u(p.shift(f, a, 1)) - p.u(p.shift(f, a, -1))) / (2 * h);
        D2[a][a] = (p.u(p.shift(f, a, 1)) - 2 * p.u(f) + p.u(p.shift(f, a, -1))) / (h * h);
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            double v = (p.u(p.shift(p.shift(f, a, 1), b, 1)) -
                        p.u(p.shift(p.shift(f, a, 1), b, -1)) -
                        p.u(p.shift(p.shift(f, a, -1), b, 1)) +
                        p.u(p.shift(p.shift(f, a, -1), b, -1))) /
                       (4 * h * h);
            D2[a][b] = v;
            D2[b][a] = v;
        }
    double q = 0;
    for (int a = 0; a < n; ++a) q += Du[a] * Du[a];
    double W2 = 1.0 + q;
    double W = std::sqrt(W2);

    // M = g^{-1} h = (I - p p^T / W^2) D2u / W
    double M[3][3];
    double w[3] = {0, 0, 0};
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) w[b] += Du[a] * D2[a][b];
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) M[a][b] = (D2[a][b] - Du[a] * w[b] / W2) / W;

    if (n == 2) {
        double s1 = M[0][0] + M[1][1];
        double s2 = M[0][0] * M[1][1] - M[0][1] * M[1][0];
        return arctan_sum2(s1, s2) - theta;
    }
    if (n == 3) {
        double s1 = M[0][0] + M[1][1] + M[2][2];
        double s2 = M[0][0] * M[1][1] - M[0][1] * M[1][0] +
                    M[0][0] * M[2][2] - M[0][2] * M[2][0] +
                    M[1][1] * M[2][2] - M[1][2] * M[2][1];
        double s3 = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                    M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                    M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
        return arctan_sum3(s1, s2, s3) - theta;
    }
    throw std::invalid_argument("solver: only n = 2 and n = 3 are supported");
}

struct InteriorMap {
    std::vector<size_t> nodes;  // interior flat indices in grid order
    std::vector<long> id;       // flat -> sequential id, -1 on the boundary
};

InteriorMap interior_map(const GraphPatch& p) {
    InteriorMap m;
    m.id.assign(p.size(), -1);
    std::vector<int> idx = first_index(p.n());
    do {
        if (!p.interior(idx, 1)) continue;
        size_t f = p.flat(idx);
        m.id[f] = static_cast<long>(m.nodes.size());
        m.nodes.push_back(f);
    } while (next_index(idx, p.extents()));
    return m;
}

double max_residual(const GraphPatch& p, const InteriorMap& m, double theta) {
    double worst = 0;
    for (size_t f : m.nodes) {
        double r = std::abs(node_residual(p, f, theta));
        if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, r);
    }
    return worst;
}

// Stencil offsets {-1,0,1}^n as flat-index deltas relative to a node.
std::vector<long> stencil_offsets(const GraphPatch& p) {
    std::vector<long> offs;
    std::vector<int> d(p.n(), -1);
    size_t center = p.flat(p.center_index());
    while (true) {
        size_t g = center;
        for (int a = 0; a < p.n(); ++a) g = p.shift(g, a, d[a]);
        offs.push_back(static_cast<long>(g) - static_cast<long>(center));
        int a = p.n() - 1;
        while (a >= 0 && d[a] == 1) d[a--] = -1;
        if (a < 0) break;
        ++d[a];
    }
    return offs;
}

Eigen::SparseMatrix<double> assemble_jacobian(GraphPatch& p, const InteriorMap& m,
                                              double theta,
                                              const std::vector<long>& offsets) {
    const long N = static_cast<long>(m.nodes.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(N) * offsets.size());
    for (long row = 0; row < N; ++row) {
        size_t f = m.nodes[static_cast<size_t>(row)];
        for (long off : offsets) {
            size_t q = static_cast<size_t>(static_cast<long>(f) + off);
            long col = m.id[q];
            if (col < 0) continue; // Dirichlet node, fixed
            double saved = p.u(q);
            double delta = 1e-7 * std::max(1.0, std::abs(saved));
            p.u(q) = saved + delta;
            double fp = node_residual(p, f, theta);
            p.u(q) = saved - delta;
            double fm = node_residual(p, f, theta);
            p.u(q) = saved;
            trip.emplace_back(static_cast<int>(row), static_cast<int>(col),
                              (fp - fm) / (2 * delta));
        }
    }
    Eigen::SparseMatrix<double> J(N, N);
    J.setFromTriplets(trip.begin(), trip.end());
    return J;
}

bool linear_solve(const Eigen::SparseMatrix<double>& J, const Eigen::VectorXd& rhs,
                  Eigen::VectorXd& out, int n_dim) {
    const long N = J.rows();
    if (N <= 2500) {
        Eigen::MatrixXd dense(J);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(dense);
        out = lu.solve(rhs);
    } else if (n_dim == 2 || N <= 10000) {
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success) return false;
        out = lu.solve(rhs);
    } else {
        // 3D at scale: direct LU fill is prohibitive, go iterative
        Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> it;
        it.preconditioner().setFillfactor(12);
        it.preconditioner().setDroptol(1e-4);
        it.setTolerance(1e-10);
        it.setMaxIterations(4000);
        it.compute(J);
        if (it.info() != Eigen::Success) return false;
        out = it.solve(rhs);
        if (!out.allFinite()) return false;
    }
    // accept on the requested residual or on backward stability, whichever is
    // looser: ill-conditioned Jacobians produce large |d| legitimately
    double resid = (J * out - rhs).cwiseAbs().maxCoeff();
    double jnorm = 0;
    for (int k = 0; k < J.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator i(J, k); i; ++i)
            jnorm = std::max(jnorm, std::abs(i.value()));
    double cap = std::max(1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff()),
                          1e-12 * jnorm * (1.0 + out.cwiseAbs().maxCoeff()));
    return std::isfinite(resid) && resid <= cap;
}

// One Newton run at fixed theta. Returns true on convergence. When the plain
// Newton direction makes no progress the Jacobian is damped (J + lambda I),
// Levenberg style, before the stage is abandoned.
bool newton_stage(GraphPatch& p, const InteriorMap& m, double theta,
                  const DirichletProblem& prob, const std::vector<long>& offsets,
                  SolveReport& rep) {
    const long N = static_cast<long>(m.nodes.size());
    std::vector<double> saved(static_cast<size_t>(N));
    for (int iter = 0; iter < prob.max_newton; ++iter) {
        Eigen::VectorXd F(N);
        double worst = 0;
        for (long i = 0; i < N; ++i) {
            F[i] = node_residual(p, m.nodes[static_cast<size_t>(i)], theta);
            worst = std::max(worst, std::abs(F[i]));
        }
        rep.history.push_back({theta, iter, worst, 0.0});
        if (worst < prob.newton_tol) return true;

        Eigen::SparseMatrix<double> J = assemble_jacobian(p, m, theta, offsets);
        double jscale = 0;
        for (int k = 0; k < J.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(J, k); it; ++it)
                jscale = std::max(jscale, std::abs(it.value()));

        for (long i = 0; i < N; ++i)
            saved[static_cast<size_t>(i)] = p.u(m.nodes[static_cast<size_t>(i)]);

        double l2 = F.norm();
        bool progressed = false;
        double lambda = 0.0;
        for (int attempt = 0; attempt < 9 && !progressed; ++attempt) {
            Eigen::SparseMatrix<double> Jd = J;
            if (lambda > 0) {
                Eigen::SparseMatrix<double> I(N, N);
                I.setIdentity();
                Jd = J + lambda * I;
            }
            Eigen::VectorXd step;
            if (linear_solve(Jd, -F, step, p.n())) {
                double alpha = 1.0;
                while (alpha > 1e-6) {
                    for (long i = 0; i < N; ++i)
                        p.u(m.nodes[static_cast<size_t>(i)]) =
                            saved[static_cast<size_t>(i)] + alpha * step[i];
                    double trial = max_residual(p, m, theta);
                    // primary acceptance: max residual decreases; fallback:
                    // least-squares decrease (the max norm stalls on
                    // saturated-arctan boundary layers)
                    bool ok = trial < worst;
                    if (!ok && std::isfinite(trial)) {
                        double trial2 = 0;
                        for (long i = 0; i < N; ++i) {
                            double r = node_residual(p, m.nodes[static_cast<size_t>(i)], theta);
                            trial2 += r * r;
                        }
                        ok = std::sqrt(trial2) < (1.0 - 1e-4 * alpha) * l2;
                    }
                    if (ok) {
                        progressed = true;
                        rep.history.back().step = alpha;
                        break;
                    }
                    alpha *= 0.5;
                }
            }
            if (!progressed) {
                for (long i = 0; i < N; ++i)
                    p.u(m.nodes[static_cast<size_t>(i)]) = saved[static_cast<size_t>(i)];
                lambda = lambda == 0 ? 1e-6 * std::max(1.0, jscale) : lambda * 30;
            }
        }
        rep.newton_total++;
        if (!progressed) return false;
    }
    return false;
}

} // namespace

std::vector<double> residual_grid(const GraphPatch& patch, const Phase& phase) {
    CurvatureField field = curvature_field(patch);
    std::vector<double> out(patch.size(), std::numeric_limits<double>::quiet_NaN());
    for (size_t f = 0; f < patch.size(); ++f) {
        if (!field.valid(f)) continue;
        double s = 0;
        for (double k : field.at(f).kappa) s += std::atan(k);
        out[f] = s - phase.theta_big;
    }
    return out;
}

SolveReport solve(const DirichletProblem& problem) {
    const GraphPatch& dom = problem.domain;
    Phase target(problem.theta, dom.n()); // validates |Theta| < n*pi/2
    (void)target;

    SolveReport rep(dom);
    GraphPatch& p = rep.solution;
    InteriorMap m = interior_map(p);
    if (m.nodes.empty()) {
        rep.failure = "no interior nodes";
        return rep;
    }
    std::vector<long> offsets = stencil_offsets(p);

    // Cold start: harmonic extension of the boundary data. The flat plane
    // solves the first stage only for zero data; for general data the
    // Laplace solve removes the boundary layer that saturates the arctans.
    if (!problem.warm_start) {
        const long N = static_cast<long>(m.nodes.size());
        std::vector<Eigen::Triplet<double>> trip;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
        for (long row = 0; row < N; ++row) {
            size_t f = m.nodes[static_cast<size_t>(row)];
            trip.emplace_back(static_cast<int>(row), static_cast<int>(row),
                              2.0 * p.n());
            for (int a = 0; a < p.n(); ++a)
                for (int d : {-1, 1}) {
                    size_t q = p.shift(f, a, d);
                    if (m.id[q] >= 0)
                        trip.emplace_back(static_cast<int>(row),
                                          static_cast<int>(m.id[q]), -1.0);
                    else
                        rhs[row] += p.u(q);
                }
        }
        Eigen::SparseMatrix<double> L(N, N);
        L.setFromTriplets(trip.begin(), trip.end());
        Eigen::VectorXd uh;
        if (linear_solve(L, rhs, uh, p.n()))
            for (long i = 0; i < N; ++i)
                p.u(m.nodes[static_cast<size_t>(i)]) = uh[i];
        else
            for (size_t f : m.nodes) p.u(f) = 0.0;
    }

    std::vector<double> stages;
    if (!problem.stages.empty()) {
        stages = problem.stages;
        if (stages.empty() || stages.back() != problem.theta)
            stages.push_back(problem.theta);
    } else if (problem.warm_start || problem.theta == 0.0 ||
               problem.continuation_steps <= 0) {
        stages.push_back(problem.theta);
    } else {
        for (int j = 0; j <= problem.continuation_steps; ++j)
            stages.push_back(problem.theta * j / problem.continuation_steps);
    }

    double reached = std::numeric_limits<double>::quiet_NaN();
    size_t next = 0;
    while (next < stages.size()) {
        double theta = stages[next];
        GraphPatch backup = p;
        if (newton_stage(p, m, theta, problem, offsets, rep)) {
            reached = theta;
            ++next;
            continue;
        }
        p = backup;
        if (std::isnan(reached)) {
            rep.failure = "Newton failed on the initial stage";
            return rep;
        }
        if (std::abs(theta - reached) < problem.min_theta_step) {
            rep.failure = "continuation stalled (step below 1e-4 in Theta)";
            return rep;
        }
        stages.insert(stages.begin() + static_cast<long>(next),
                      0.5 * (reached + theta));
    }

    rep.converged = true;
    rep.final_residual = max_residual(p, m, problem.theta);

    // Gamma_{n-1} flags on the solution
    rep.admissible.assign(p.size(), 0);
    CurvatureField field = curvature_field(p);
    for (size_t f : m.nodes) {
        KappaVector kappa(field.at(f).kappa);
        rep.admissible[f] = in_gamma_k(kappa, p.n() - 1) ? 1 : 0;
    }
    return rep;
}

GraphPatch sphere_cap_reference(double R, const GraphPatch& geometry,
                                const std::vector<double>& cap_center) {
    GraphPatch out = geometry;
    std::vector<int> idx = first_index(out.n());
    do {
        size_t f = out.flat(idx);
        double d2 = 0;
        for (int a = 0; a < out.n(); ++a) {
            double dx = out.coord(a, idx[a]) - cap_center[a];
            d2 += dx * dx;
        }
        if (d2 >= R * R)
            throw std::domain_error("sphere_cap_reference: domain touches the rim");
        out.u(f) = -std::sqrt(R * R - d2);
    } while (next_index(idx, out.extents()));
    return out;
}

CurvatureProbe probe_interior_curvature(const SolveReport& report, double inner_radius) {
    const GraphPatch& p = report.solution;
    int n = p.n();
    std::vector<double> center(n);
    for (int a = 0; a < n; ++a)
        center[a] = p.origin()[a] + 0.5 * p.spacing() * (p.extents()[a] - 1);
    CurvatureField field = curvature_field(p);
    CurvatureProbe probe;
    std::vector<int> idx = first_index(n);
    do {
        if (!p.interior(idx, 1)) continue;
        double d2 = 0;
        for (int a = 0; a < n; ++a) {
            double dx = p.coord(a, idx[a]) - center[a];
            d2 += dx * dx;
        }
        if (d2 > inner_radius * inner_radius) continue;
        for (double k : field.at(p.flat(idx)).kappa)
            probe.sup_kappa_inner = std::max(probe.sup_kappa_inner, std::abs(k));
    } while (next_index(idx, p.extents()));
    probe.osc_u = p.osc_u();
    probe.ratio = probe.osc_u > 0 ? probe.sup_kappa_inner / probe.osc_u
                                  : probe.sup_kappa_inner;
    return probe;
}

GradientProbe probe_gradient_estimate(const SolveReport& report) {
    const GraphPatch& p = report.solution;
    int n = p.n();
    // node closest to the origin
    std::vector<int> idx(n);
    for (int a = 0; a < n; ++a) {
        double t = -p.origin()[a] / p.spacing();
        int i = static_cast<int>(std::lround(t));
        idx[a] = std::clamp(i, 0, p.extents()[a] - 1);
    }
    if (!p.interior(idx, 1))
        throw std::invalid_argument("probe_gradient_estimate: origin is not interior");
    size_t f = p.flat(idx);
    double s = 0;
    for (int a = 0; a < n; ++a) {
        double g = d1(p, f, a);
        s += g * g;
    }
    GradientProbe probe;
    probe.grad0 = std::sqrt(s);
    probe.osc_u = p.osc_u();
    probe.ratio = probe.osc_u > 0 ? probe.grad0 / probe.osc_u : probe.grad0;
    return probe;
}

} // namespace slc
