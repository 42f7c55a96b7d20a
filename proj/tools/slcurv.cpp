// slcurv: command-line experiments for the prescribed-phase curvature
// equation sum_i arctan(kappa_i) = Theta on graph hypersurfaces.
//
// Subcommands: verify-identities, verify-jacobi, solve, probe, ot.
// All outputs are UTF-8 CSV with header rows, numbers printed with 17
// significant digits; fixed seed means byte-identical outputs.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "slc/geometry.hpp"
#include "slc/io.hpp"
#include "slc/jacobi.hpp"
#include "slc/kappa.hpp"
#include "slc/ot2d.hpp"
#include "slc/reference.hpp"
#include "slc/rng.hpp"
#include "slc/solver.hpp"
#include "slc/symfunc.hpp"

namespace fs = std::filesystem;
using namespace slc;

namespace {

constexpr double kPi = std::numbers::pi;

struct CommonOpts {
    std::string config;
    std::uint64_t seed = 12345;
    std::string out = "out";
    bool svg = false;
};

Config load_opt_config(const CommonOpts& o) {
    if (o.config.empty()) return Config{};
    return Config::load(o.config);
}

std::ofstream open_csv(const CommonOpts& o, const std::string& name) {
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / name);
    if (!f) throw std::runtime_error("cannot open output file " + name);
    return f;
}

// ---------------------------------------------------------------------------
// verify-identities
// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    long failures = 0;
    double worst = 0; // largest error / most negative margin
    std::string first_counterexample;
};

KappaVector random_kappa(int n, Rng& rng) {
    std::vector<double> v(static_cast<size_t>(n));
    for (double& x : v) x = std::tan(rng.uniform(-kPi / 2 + 1e-3, kPi / 2 - 1e-3));
    return KappaVector(v);
}

// Rejection sampling of on-phase vectors starves near |Theta| = n*pi/2, so
// the sampled-phase suites stay within a half-pi of the critical phase.
double onphase_bound(int n) {
    return std::min(n * kPi / 2 - 0.1, Phase::critical(n) + kPi / 2 - 0.02);
}

Eigen::MatrixXd random_symmetric(int n, Rng& rng) {
    Eigen::MatrixXd h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            h(i, j) = rng.uniform(-2.0, 2.0);
            h(j, i) = h(i, j);
        }
    return h;
}

KappaVector random_gamma(int n, Rng& rng) {
    for (int tries = 0; tries < 1000000; ++tries) {
        std::vector<double> v(static_cast<size_t>(n));
        for (double& x : v) x = rng.uniform(-1.0, 3.0);
        KappaVector kappa(v);
        if (in_gamma_k(kappa, n - 1)) return kappa;
    }
    throw std::runtime_error("random_gamma: rejection sampling failed");
}

template <class Fn>
SuiteResult run_suite(const CommonOpts& o, const std::string& name, long samples,
                      Rng& rng, Fn sample_fn) {
    std::ofstream csv = open_csv(o, name + ".csv");
    csv << "id,n,value,bound,pass\n";
    SuiteResult res;
    res.name = name;
    for (long id = 0; id < samples; ++id) {
        int n = 2 + static_cast<int>(id % 5); // n cycles 2..6
        auto [value, bound, pass] = sample_fn(id, n, rng);
        csv << id << "," << n << "," << g17(value) << "," << g17(bound) << ","
            << (pass ? 1 : 0) << "\n";
        if (!pass) {
            ++res.failures;
            if (res.first_counterexample.empty())
                res.first_counterexample = name + ": id=" + std::to_string(id) +
                                           " n=" + std::to_string(n) +
                                           " value=" + g17(value) + " bound=" + g17(bound);
        }
        res.worst = std::max(res.worst, value);
    }
    return res;
}

int cmd_verify_identities(const CommonOpts& o) {
    Config cfg = load_opt_config(o);
    long samples = cfg.integer("samples", 10000);
    bool fault = cfg.integer("fault_inject", 0) != 0;
    Rng rng(o.seed);

    std::vector<SuiteResult> suites;

    suites.push_back(run_suite(o, "volume_product", samples, rng,
        [&](long id, int n, Rng& r) {
            KappaVector k = random_kappa(n, r);
            Phase ph(r.uniform(-n * kPi / 2 + 0.05, n * kPi / 2 - 0.05), n);
            VolumeFactor vf = volume_factor(k, ph);
            double prod = 1;
            for (double x : k.values()) prod *= 1.0 + x * x;
            double lhs = vf.V1 * vf.V1 + vf.V2 * vf.V2;
            double err = std::abs(prod - lhs) / prod;
            if (fault && id == 0) err += 1.0; // test hook
            return std::tuple{err, 1e-9, err < 1e-9};
        }));

    suites.push_back(run_suite(o, "form_agreement", samples, rng,
        [&](long, int n, Rng& r) {
            KappaVector k = random_kappa(n, r);
            Phase ph(r.uniform(-n * kPi / 2 + 0.05, n * kPi / 2 - 0.05), n);
            std::vector<double> sig = sigma_all(k.values());
            double scale = 1;
            for (double s : sig) scale += std::abs(s);
            double err = std::abs(slc_algebraic_big(sig, ph) -
                                  slc_algebraic_small(sig, ph)) / scale;
            return std::tuple{err, 1e-10, err < 1e-10};
        }));

    suites.push_back(run_suite(o, "newton_oracle", samples, rng,
        [&](long, int n, Rng& r) {
            Eigen::MatrixXd h = random_symmetric(n, r);
            double err = 0;
            for (int k = 0; k <= n; ++k) {
                Eigen::MatrixXd rec = newton_tensor(h, k).entries;
                Eigen::MatrixXd ora = newton_tensor_minor(h, k);
                double scale = 1.0 + ora.cwiseAbs().maxCoeff();
                err = std::max(err, (rec - ora).cwiseAbs().maxCoeff() / scale);
            }
            return std::tuple{err, 1e-9, err < 1e-9};
        }));

    suites.push_back(run_suite(o, "tk_symmetry", samples, rng,
        [&](long, int n, Rng& r) {
            Eigen::MatrixXd h = random_symmetric(n, r);
            double err = 0;
            for (int k = 0; k <= n; ++k) {
                Eigen::MatrixXd t = newton_tensor_matrix(h, k);
                double scale = 1.0 + t.cwiseAbs().maxCoeff();
                err = std::max(err, (t - t.transpose()).cwiseAbs().maxCoeff() / scale);
            }
            return std::tuple{err, 1e-9, err < 1e-9};
        }));

    suites.push_back(run_suite(o, "onphase_volume", samples, rng,
        [&](long, int n, Rng& r) {
            Phase ph(r.uniform(-onphase_bound(n), onphase_bound(n)), n);
            KappaVector k = make_on_phase(n, ph, r);
            VolumeFactor vf = volume_factor(k, ph);
            double prod = 1;
            for (double x : k.values()) prod *= 1.0 + x * x;
            double err = std::abs(vf.V * vf.V - prod) / prod;
            bool pass = vf.V >= 1.0 - 1e-12 && err < 1e-9;
            return std::tuple{err, 1e-9, pass};
        }));

    suites.push_back(run_suite(o, "onphase_inverse", samples, rng,
        [&](long, int n, Rng& r) {
            Phase ph(r.uniform(-onphase_bound(n), onphase_bound(n)), n);
            KappaVector k = make_on_phase(n, ph, r);
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
            for (int i = 0; i < n; ++i) h(i, i) = k[i];
            Eigen::MatrixXd F = linearization(h, ph);
            Eigen::MatrixXd G = Eigen::MatrixXd::Identity(n, n) + h * h;
            double V = volume_factor(k, ph).V;
            double err = (F * G - V * Eigen::MatrixXd::Identity(n, n))
                             .cwiseAbs().maxCoeff() / V;
            return std::tuple{err, 1e-9, err < 1e-9};
        }));

    suites.push_back(run_suite(o, "admissibility", samples, rng,
        [&](long, int n, Rng& r) {
            double lo = Phase::critical(n);
            Phase ph(r.uniform(lo, lo + kPi / 2 - 0.05), n);
            KappaVector k = make_on_phase(n, ph, r);
            bool ok = in_gamma_k(k, n - 1);
            return std::tuple{ok ? 0.0 : 1.0, 0.5, ok};
        }));

    suites.push_back(run_suite(o, "ordered_kappa", samples, rng,
        [&](long, int n, Rng& r) {
            KappaVector k = random_gamma(n, r);
            double worst = 0;
            for (int i = 0; i + 1 < n; ++i) {
                double v = k[i] + (n - 1 - i) * k[n - 1];
                double scale = 1.0 + std::abs(k[i]) + std::abs(k[n - 1]);
                worst = std::min(worst, v / scale);
            }
            return std::tuple{-worst, 1e-12, worst >= -1e-12};
        }));

    long total_fail = 0;
    for (const SuiteResult& s : suites) {
        std::cout << "suite " << s.name << ": "
                  << (s.failures == 0 ? "ok" : "FAILED") << " (failures="
                  << s.failures << ")\n";
        if (s.failures > 0 && total_fail == 0)
            std::cout << "counterexample: " << s.first_counterexample << "\n";
        total_fail += s.failures;
    }
    return total_fail == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify-jacobi
// ---------------------------------------------------------------------------

int cmd_verify_jacobi(const CommonOpts& o) {
    Config cfg = load_opt_config(o);
    int n = static_cast<int>(cfg.integer("n", 3));
    std::string mode_s = cfg.str("mode", "critical");
    long samples = cfg.integer("samples", 10000);
    double epsilon = cfg.num("epsilon", kDefaultEpsilon);
    double J = cfg.num("J", default_J(n));

    JacobiMode mode;
    if (mode_s == "critical") mode = JacobiMode::critical;
    else if (mode_s == "convex") mode = JacobiMode::convex;
    else {
        std::cerr << "unsupported mode '" << mode_s << "'\n";
        return 2;
    }
    double theta = cfg.num("theta", mode == JacobiMode::critical
                                        ? Phase::critical(n)
                                        : (n - 1) * kPi / 2);

    JacobiReport rep;
    try {
        rep = verify_jacobi(n, mode, theta, samples, epsilon, J, o.seed);
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    std::ofstream csv = open_csv(o, "jacobi_report.csv");
    csv << "id";
    for (int i = 1; i <= n; ++i) csv << ",kappa" << i;
    csv << ",slack\n";
    for (const auto& row : rep.rows) {
        csv << row.id;
        for (double k : row.kappa) csv << "," << g17(k);
        csv << "," << g17(row.slack) << "\n";
    }
    std::cout << "min slack = " << g17(rep.min_slack) << " over " << rep.samples
              << " samples\n";
    return rep.failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// solve / probe: shared problem construction
// ---------------------------------------------------------------------------

struct ProblemSpec {
    int n = 2;
    std::vector<double> center;
    double halfwidth = 0.40625;
    double spacing = 0.03125;
    double theta = kPi / 2;
    int continuation_steps = 8;
    std::vector<double> stages; // explicit schedule, optional
    std::string boundary = "cap"; // zero | cap
    double cap_radius = 1.0;
    std::vector<double> cap_center;
    double bump_amp = 0.0;
    bool warm_start = false;
    double newton_tol = 1e-9;
    int max_newton = 50;
};

ProblemSpec read_problem(const Config& cfg) {
    ProblemSpec ps;
    ps.n = static_cast<int>(cfg.integer("n", 2));
    ps.center = cfg.list("center", std::vector<double>(ps.n, 0.0));
    ps.halfwidth = cfg.num("halfwidth", 0.40625);
    ps.spacing = cfg.num("spacing", 0.03125);
    ps.theta = cfg.num("theta", kPi / 2);
    ps.continuation_steps = static_cast<int>(cfg.integer("continuation_steps", 8));
    ps.stages = cfg.list("continuation_stages", {});
    ps.boundary = cfg.str("boundary", "cap");
    ps.cap_radius = cfg.num("cap_radius", 1.0);
    ps.cap_center = cfg.list("cap_center", std::vector<double>(ps.n, 0.0));
    ps.bump_amp = cfg.num("bump_amp", 0.0);
    ps.warm_start = cfg.integer("warm_start", 0) != 0;
    ps.newton_tol = cfg.num("newton_tol", 1e-9);
    ps.max_newton = static_cast<int>(cfg.integer("max_newton", 50));
    if (static_cast<int>(ps.center.size()) != ps.n ||
        static_cast<int>(ps.cap_center.size()) != ps.n)
        throw std::runtime_error("center/cap_center dimension mismatch");
    return ps;
}

double cap_height(const ProblemSpec& ps, const std::vector<double>& x) {
    double d2 = 0;
    for (int a = 0; a < ps.n; ++a)
        d2 += (x[a] - ps.cap_center[a]) * (x[a] - ps.cap_center[a]);
    if (d2 >= ps.cap_radius * ps.cap_radius)
        throw std::domain_error("cap boundary data: domain touches the rim");
    return -std::sqrt(ps.cap_radius * ps.cap_radius - d2);
}

double boundary_value(const ProblemSpec& ps, const std::vector<double>& x) {
    if (ps.boundary == "zero") return 0.0;
    if (ps.boundary != "cap")
        throw std::runtime_error("unknown boundary '" + ps.boundary + "'");
    double v = cap_height(ps, x);
    if (ps.bump_amp != 0) {
        double s = 1;
        for (int a = 0; a < ps.n; ++a)
            s *= std::cos(kPi * (x[a] - ps.center[a]) / ps.halfwidth);
        v += ps.bump_amp * s;
    }
    return v;
}

DirichletProblem build_problem(const ProblemSpec& ps) {
    GraphPatch patch = GraphPatch::box(ps.n, ps.center, ps.halfwidth, ps.spacing);
    std::vector<int> idx = first_index(ps.n);
    do {
        size_t f = patch.flat(idx);
        if (!patch.interior(idx, 1))
            patch.u(f) = boundary_value(ps, patch.point(idx));
        else if (ps.warm_start)
            patch.u(f) = boundary_value(ps, patch.point(idx));
    } while (next_index(idx, patch.extents()));

    DirichletProblem prob(std::move(patch));
    prob.theta = ps.theta;
    prob.continuation_steps = ps.continuation_steps;
    prob.stages = ps.stages;
    prob.warm_start = ps.warm_start;
    prob.newton_tol = ps.newton_tol;
    prob.max_newton = ps.max_newton;
    return prob;
}

void write_history(const CommonOpts& o, const SolveReport& rep) {
    std::ofstream csv = open_csv(o, "history.csv");
    csv << "theta,iter,max_residual,step\n";
    for (const auto& row : rep.history)
        csv << g17(row.theta) << "," << row.iter << "," << g17(row.max_residual)
            << "," << g17(row.step) << "\n";
}

int cmd_solve(const CommonOpts& o) {
    Config cfg = load_opt_config(o);
    ProblemSpec ps;
    std::optional<DirichletProblem> prob;
    try {
        ps = read_problem(cfg);
        if (!(std::abs(ps.theta) < ps.n * kPi / 2)) {
            std::cerr << "config rejected: |theta| must be below n*pi/2\n";
            return 2;
        }
        prob.emplace(build_problem(ps));
    } catch (const std::exception& e) {
        std::cerr << "config rejected: " << e.what() << "\n";
        return 2;
    }

    SolveReport rep = solve(*prob);
    write_history(o, rep);

    bool exact_known = ps.boundary == "cap" && ps.bump_amp == 0.0;
    {
        std::ofstream csv = open_csv(o, "solution.csv");
        for (int a = 1; a <= ps.n; ++a) csv << "x" << a << ",";
        csv << "u";
        if (exact_known) csv << ",u_exact,error";
        csv << "\n";
        const GraphPatch& p = rep.solution;
        std::vector<int> idx = first_index(ps.n);
        do {
            size_t f = p.flat(idx);
            for (int a = 0; a < ps.n; ++a) csv << g17(p.coord(a, idx[a])) << ",";
            csv << g17(p.u(f));
            if (exact_known) {
                double ue = cap_height(ps, p.point(idx));
                csv << "," << g17(ue) << "," << g17(p.u(f) - ue);
            }
            csv << "\n";
        } while (next_index(idx, p.extents()));
    }

    {
        std::ofstream txt = open_csv(o, "report.txt");
        txt << "converged=" << (rep.converged ? 1 : 0) << "\n"
            << "final_residual=" << g17(rep.final_residual) << "\n"
            << "newton_total=" << rep.newton_total << "\n";
        if (!rep.converged) txt << "failure=" << rep.failure << "\n";
        long adm = 0, tot = 0;
        for (char c : rep.admissible) {
            adm += c;
        }
        std::vector<int> idx = first_index(ps.n);
        do {
            if (rep.solution.interior(idx, 1)) ++tot;
        } while (next_index(idx, rep.solution.extents()));
        txt << "admissible_interior=" << adm << "/" << tot << "\n";
    }

    if (rep.converged) {
        CurvatureField field = curvature_field(rep.solution);
        std::ofstream csv = open_csv(o, "field.csv");
        write_curvature_csv(field, csv);
    }

    if (o.svg && ps.n == 2 && rep.converged) {
        CurvatureField field = curvature_field(rep.solution);
        const GraphPatch& p = rep.solution;
        std::vector<double> k1(p.size(), std::numeric_limits<double>::quiet_NaN());
        for (size_t f = 0; f < p.size(); ++f)
            if (field.valid(f)) k1[f] = field.at(f).kappa[0];
        write_svg_heatmap((fs::path(o.out) / "kappa1.svg").string(),
                          p.extents()[0], p.extents()[1], k1, "kappa1");
    }

    if (!rep.converged) {
        std::cerr << "solve failed: " << rep.failure << "\n";
        return 3;
    }
    std::cout << "converged, final residual " << g17(rep.final_residual) << "\n";
    return 0;
}

int cmd_probe(const CommonOpts& o) {
    Config cfg = load_opt_config(o);
    ProblemSpec base;
    try {
        base = read_problem(cfg);
    } catch (const std::exception& e) {
        std::cerr << "config rejected: " << e.what() << "\n";
        return 2;
    }
    if (!cfg.has("cap_center")) base.cap_center[0] = 0.3; // off-center default
    std::vector<double> amps = cfg.list("amps", {0.0, 0.01, 0.02, 0.03, 0.04});
    std::vector<double> spacings = cfg.list("spacings", {0.03125, 0.015625});
    double inner = cfg.num("inner_radius", 0.2);

    std::ofstream csv = open_csv(o, "probes.csv");
    csv << "amp,spacing,sup_kappa_inner,osc_u,ratio_curvature,grad0,ratio_gradient\n";
    for (double amp : amps) {
        for (double h : spacings) {
            ProblemSpec ps = base;
            ps.bump_amp = amp;
            ps.spacing = h;
            SolveReport rep = solve(build_problem(ps));
            if (!rep.converged) {
                std::cerr << "probe member failed to solve (amp=" << amp
                          << ", spacing=" << h << "): " << rep.failure << "\n";
                return 4;
            }
            CurvatureProbe cp = probe_interior_curvature(rep, inner);
            GradientProbe gp = probe_gradient_estimate(rep);
            csv << g17(amp) << "," << g17(h) << "," << g17(cp.sup_kappa_inner) << ","
                << g17(cp.osc_u) << "," << g17(cp.ratio) << "," << g17(gp.grad0)
                << "," << g17(gp.ratio) << "\n";
        }
    }
    std::cout << "probe family written to " << o.out << "/probes.csv\n";
    return 0;
}

// ---------------------------------------------------------------------------
// ot
// ---------------------------------------------------------------------------

int cmd_ot(const CommonOpts& o) {
    Config cfg = load_opt_config(o);
    double theta = cfg.num("theta", kPi / 3);
    if (!(theta > 0 && theta < kPi / 2)) {
        std::cerr << "config rejected: theta must lie in (0, pi/2)\n";
        return 2;
    }
    double spacing = cfg.num("spacing", 0.0078125);
    double halfwidth = cfg.num("halfwidth", 0.40625);
    int oracle_m = static_cast<int>(cfg.integer("oracle_m", 10));
    long mtw_trials = cfg.integer("mtw_trials", 200);
    Rng rng(o.seed);

    // analytic cap: n arctan(1/R) = theta with n = 2
    double R = 1.0 / std::tan(theta / 2);
    GraphPatch geom = GraphPatch::box(2, {0, 0}, halfwidth, spacing);
    GraphPatch cap = sphere_cap_reference(R, geom);

    TransportMap tm = ot_map(cap, theta);
    double target = 1.0 / (std::cos(theta) * std::cos(theta));
    {
        std::ofstream csv = open_csv(o, "ot_consistency.csv");
        csv << "x1,x2,detDT,target,residual\n";
        double worst = 0;
        std::vector<int> idx = first_index(2);
        do {
            size_t f = cap.flat(idx);
            if (std::isnan(tm.detDT[f])) continue;
            double resid = tm.detDT[f] - target;
            worst = std::max(worst, std::abs(resid));
            csv << g17(cap.coord(0, idx[0])) << "," << g17(cap.coord(1, idx[1]))
                << "," << g17(tm.detDT[f]) << "," << g17(target) << ","
                << g17(resid) << "\n";
        } while (next_index(idx, cap.extents()));
        std::cout << "measure preservation: max |det DT - 1/cos^2| = " << g17(worst)
                  << "\n";
    }

    {
        OTInstance inst = cap_instance(theta, oracle_m);
        Assignment asg = discrete_ot_oracle(inst);
        std::ofstream csv = open_csv(o, "assignment.csv");
        csv << "i,x1,x2,y1,y2,true1,true2,match\n";
        long matched = 0;
        for (size_t i = 0; i < inst.source.size(); ++i) {
            Eigen::Vector2d y = inst.target[static_cast<size_t>(asg.target_of[i])];
            Eigen::Vector2d yt = 2.0 * inst.source[i];
            bool match = (y - yt).norm() < 1e-12;
            matched += match;
            csv << i << "," << g17(inst.source[i][0]) << "," << g17(inst.source[i][1])
                << "," << g17(y[0]) << "," << g17(y[1]) << "," << g17(yt[0]) << ","
                << g17(yt[1]) << "," << (match ? 1 : 0) << "\n";
        }
        std::cout << "assignment agreement with dilation map: " << matched << "/"
                  << inst.source.size() << "\n";
    }

    {
        std::vector<double> thetas = cfg.list(
            "mtw_thetas", {kPi / 12, kPi / 6, kPi / 4, kPi / 3, 5 * kPi / 12});
        std::ofstream csv = open_csv(o, "mtw_scan.csv");
        csv << "theta,min_A\n";
        for (double th : thetas) {
            double min_a = std::numeric_limits<double>::infinity();
            for (long t = 0; t < mtw_trials; ++t) {
                Eigen::Vector2d Du(rng.uniform(-2, 2), rng.uniform(-2, 2));
                Eigen::Vector2d xi(rng.uniform(-1, 1), rng.uniform(-1, 1));
                if (xi.norm() < 1e-3) xi = Eigen::Vector2d(1, 0);
                Eigen::Vector2d nu(-xi[1], xi[0]);
                nu *= rng.uniform(0.1, 2.0);
                min_a = std::min(min_a, mtw_tensor(Du, xi, nu, th));
            }
            csv << g17(th) << "," << g17(min_a) << "\n";
        }
        std::cout << "MTW scan written to " << o.out << "/mtw_scan.csv\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for the curvature equation sum arctan kappa_i = Theta"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config, "key=value configuration file");
        sub->add_option("--seed", opts.seed, "RNG seed");
        sub->add_option("--out", opts.out, "output directory");
        sub->add_flag("--svg", opts.svg, "emit SVG figures where supported");
    };

    CLI::App* vi = app.add_subcommand("verify-identities",
                                      "sampled checks of the symmetric-function identities");
    CLI::App* vj = app.add_subcommand("verify-jacobi",
                                      "sampled verification of the Jacobi inequality");
    CLI::App* sv = app.add_subcommand("solve", "Dirichlet solve with continuation");
    CLI::App* pr = app.add_subcommand("probe", "interior curvature/gradient estimate probes");
    CLI::App* ot = app.add_subcommand("ot", "dimension-two optimal transport checks");
    for (CLI::App* sub : {vi, vj, sv, pr, ot}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (vi->parsed()) return cmd_verify_identities(opts);
        if (vj->parsed()) return cmd_verify_jacobi(opts);
        if (sv->parsed()) return cmd_solve(opts);
        if (pr->parsed()) return cmd_probe(opts);
        if (ot->parsed()) return cmd_ot(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 10;
    }
    return 0;
}
