#include "slc/ot2d.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_2d(const GraphPatch& patch, const char* who) {
    if (patch.n() != 2)
        throw std::invalid_argument(std::string(who) + ": base dimension must be 2");
}

} // namespace

std::vector<double> det_form_residual(const GraphPatch& patch, const Phase& phase) {
    require_2d(patch, "det_form_residual");
    double st = std::sin(phase.theta_big);
    if (std::abs(st) < 1e-12)
        throw std::domain_error("det_form_residual: sin(Theta) must be nonzero");
    double ct = std::cos(phase.theta_big) / st;

    std::vector<double> out(patch.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<int> idx = first_index(2);
    do {
        if (!patch.interior(idx, 1)) continue;
        size_t f = patch.flat(idx);
        double u1 = d1(patch, f, 0), u2 = d1(patch, f, 1);
        double W = std::sqrt(1.0 + u1 * u1 + u2 * u2);
        double a11 = d2(patch, f, 0, 0) + W * ct * (1.0 + u1 * u1);
        double a22 = d2(patch, f, 1, 1) + W * ct * (1.0 + u2 * u2);
        double a12 = d2(patch, f, 0, 1) + W * ct * (u1 * u2);
        double det = a11 * a22 - a12 * a12;
        out[f] = det - W * W * W * W / (st * st);
    } while (next_index(idx, patch.extents()));
    return out;
}

double transport_cost(const Eigen::Vector2d& x, const Eigen::Vector2d& y, double theta) {
    double t = std::tan(theta);
    double d2 = (x - y).squaredNorm();
    if (d2 >= t * t) return kInf;
    return -std::sqrt(t * t - d2);
}

TransportMap ot_map(const GraphPatch& patch, double theta) {
    require_2d(patch, "ot_map");
    if (!(theta > 0 && theta < std::numbers::pi / 2))
        throw std::domain_error("ot_map: Theta must lie in (0, pi/2)");
    double t = std::tan(theta);

    TransportMap tm;
    tm.T.assign(patch.size(), Eigen::Vector2d::Zero());
    tm.detDT.assign(patch.size(), std::numeric_limits<double>::quiet_NaN());
    tm.t_valid.assign(patch.size(), 0);

    std::vector<int> idx = first_index(2);
    do {
        if (!patch.interior(idx, 2)) continue;
        size_t f = patch.flat(idx);
        double u1 = d1_fourth(patch, f, 0), u2 = d1_fourth(patch, f, 1);
        double W = std::sqrt(1.0 + u1 * u1 + u2 * u2);
        tm.T[f] = Eigen::Vector2d(patch.coord(0, idx[0]) + t * u1 / W,
                                  patch.coord(1, idx[1]) + t * u2 / W);
        tm.t_valid[f] = 1;
    } while (next_index(idx, patch.extents()));

    double h = patch.spacing();
    idx = first_index(2);
    do {
        if (!patch.interior(idx, 3)) continue;
        size_t f = patch.flat(idx);
        Eigen::Matrix2d DT;
        for (int a = 0; a < 2; ++a) {
            Eigen::Vector2d dTa =
                (tm.T[patch.shift(f, a, 1)] - tm.T[patch.shift(f, a, -1)]) / (2 * h);
            DT(0, a) = dTa[0];
            DT(1, a) = dTa[1];
        }
        tm.detDT[f] = DT.determinant();
    } while (next_index(idx, patch.extents()));
    return tm;
}

std::vector<char> c_convexity_check(const GraphPatch& patch, double theta) {
    require_2d(patch, "c_convexity_check");
    double st = std::sin(theta);
    if (std::abs(st) < 1e-12)
        throw std::domain_error("c_convexity_check: sin(Theta) must be nonzero");
    double ct = std::cos(theta) / st;

    std::vector<char> ok(patch.size(), 0);
    std::vector<int> idx = first_index(2);
    do {
        if (!patch.interior(idx, 1)) continue;
        size_t f = patch.flat(idx);
        double u1 = d1(patch, f, 0), u2 = d1(patch, f, 1);
        double W = std::sqrt(1.0 + u1 * u1 + u2 * u2);
        double a11 = d2(patch, f, 0, 0) + W * ct * (1.0 + u1 * u1);
        double a22 = d2(patch, f, 1, 1) + W * ct * (1.0 + u2 * u2);
        double a12 = d2(patch, f, 0, 1) + W * ct * (u1 * u2);
        double mean = 0.5 * (a11 + a22);
        double disc = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
        ok[f] = (mean - disc >= -1e-8) ? 1 : 0;
    } while (next_index(idx, patch.extents()));
    return ok;
}

OTInstance cap_instance(double theta, int m) {
    if (m < 2) throw std::invalid_argument("cap_instance: need at least 2 points per axis");
    OTInstance inst;
    inst.theta = theta;
    double c = std::cos(theta);
    inst.density_f = 1.0 / (c * c);
    inst.density_g = 1.0;
    double w = 0.2;
    double step = 2 * w / (m - 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Eigen::Vector2d x(-w + i * step, -w + j * step);
            inst.source.push_back(x);
            inst.target.push_back(2.0 * x);
        }
    return inst;
}

// Hungarian method with potentials and augmenting paths, O(n^3).
Assignment discrete_ot_oracle(const OTInstance& inst) {
    const int n = static_cast<int>(inst.source.size());
    if (n == 0 || inst.target.size() != inst.source.size())
        throw std::invalid_argument("discrete_ot_oracle: point sets must be nonempty and equal");
    if (n > 400)
        throw std::invalid_argument("discrete_ot_oracle: limited to 400 points");

    const double big = 1e18; // stand-in for an infeasible pair
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double c = transport_cost(inst.source[i], inst.target[j], inst.theta);
            cost[i][j] = std::isfinite(c) ? c : big;
        }

    // potentials on rows/columns; match_col[j] = row matched to column j
    std::vector<double> pot_row(n + 1, 0), pot_col(n + 1, 0);
    std::vector<int> match_col(n + 1, n);
    std::vector<int> path(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        match_col[n] = i;
        int j_cur = n;
        std::vector<double> min_slack(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j_cur] = 1;
            int row = match_col[j_cur];
            double delta = kInf;
            int j_next = -1;
            for (int j = 0; j < n; ++j) {
                if (used[j]) continue;
                double slack = cost[row][j] - pot_row[row] - pot_col[j];
                if (slack < min_slack[j]) {
                    min_slack[j] = slack;
                    path[j] = j_cur;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j_next = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    pot_row[match_col[j]] += delta;
                    pot_col[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j_cur = j_next;
        } while (match_col[j_cur] != n);
        while (j_cur != n) {
            int j_prev = path[j_cur];
            match_col[j_cur] = match_col[j_prev];
            j_cur = j_prev;
        }
    }

    Assignment out;
    out.target_of.assign(n, -1);
    for (int j = 0; j < n; ++j)
        if (match_col[j] != n) out.target_of[match_col[j]] = j;
    out.total_cost = 0;
    for (int i = 0; i < n; ++i) {
        int j = out.target_of[i];
        if (cost[i][j] >= big / 2)
            throw std::runtime_error(
                "discrete_ot_oracle: optimal assignment needs infeasible pair (" +
                std::to_string(i) + ", " + std::to_string(j) + ")");
        out.total_cost += cost[i][j];
    }
    return out;
}

Eigen::Matrix2d mtw_cost_hessian(const Eigen::Vector2d& p, double theta) {
    double W = std::sqrt(1.0 + p.squaredNorm());
    double cot = std::cos(theta) / std::sin(theta);
    return -cot * W *
           (Eigen::Matrix2d::Identity() + p * p.transpose());
}

double mtw_tensor(const Eigen::Vector2d& Du, const Eigen::Vector2d& xi,
                  const Eigen::Vector2d& nu, double theta) {
    double nx = xi.norm(), nn = nu.norm();
    if (!(nx > 0) || !(nn > 0))
        throw std::invalid_argument("mtw_tensor: xi and nu must be nonzero");
    if (std::abs(xi.dot(nu)) > 1e-10 * nx * nn)
        throw std::domain_error("mtw_tensor: xi must be orthogonal to nu");
    double W2 = 1.0 + Du.squaredNorm();
    double W = std::sqrt(W2);
    double cot = std::cos(theta) / std::sin(theta);
    double gxx = xi.squaredNorm() + std::pow(Du.dot(xi), 2);
    double ginn = nu.squaredNorm() - std::pow(Du.dot(nu), 2) / W2;
    return -cot * gxx * ginn / W;
}

} // namespace slc
