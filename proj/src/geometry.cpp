#include "slc/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <ostream>

#include "slc/io.hpp"

namespace slc {

CurvaturePoint point_geometry(const GraphPatch& patch, size_t f) {
    int n = patch.n();
    CurvaturePoint pt;
    pt.Du = Eigen::VectorXd(n);
    pt.D2u = Eigen::MatrixXd(n, n);
    for (int a = 0; a < n; ++a) {
        pt.Du[a] = d1(patch, f, a);
        for (int b = a; b < n; ++b) {
            double v = d2(patch, f, a, b);
            pt.D2u(a, b) = v;
            pt.D2u(b, a) = v;
        }
    }
    double q = pt.Du.squaredNorm();
    pt.W = std::sqrt(1.0 + q);
    pt.g = Eigen::MatrixXd::Identity(n, n) + pt.Du * pt.Du.transpose();
    pt.ginv = Eigen::MatrixXd::Identity(n, n) -
              (pt.Du * pt.Du.transpose()) / (pt.W * pt.W);
    pt.h = pt.D2u / pt.W;

    // g^(-1/2) = I - p p^T / (W (1 + W)), exact for g = I + p p^T
    Eigen::MatrixXd gmh = Eigen::MatrixXd::Identity(n, n) -
                          (pt.Du * pt.Du.transpose()) / (pt.W * (1.0 + pt.W));
    pt.shape = gmh * pt.h * gmh;
    pt.shape = 0.5 * (pt.shape + pt.shape.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pt.shape);
    pt.kappa.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pt.kappa[static_cast<size_t>(i)] = es.eigenvalues()[n - 1 - i];

    pt.H = 0;
    pt.A2 = 0;
    pt.detG = 1;
    for (double k : pt.kappa) {
        pt.H += k;
        pt.A2 += k * k;
        pt.detG *= 1.0 + k * k;
    }
    pt.V = std::sqrt(pt.detG);
    pt.G = Eigen::MatrixXd::Identity(n, n) + pt.shape * pt.shape;
    return pt;
}

CurvatureField curvature_field(const GraphPatch& patch) {
    for (int e : patch.extents())
        if (e < 3) throw std::domain_error("curvature_field: need >= 3 points per axis");
    std::vector<CurvaturePoint> pts(patch.size());
    std::vector<char> valid(patch.size(), 0);
    std::vector<int> idx = first_index(patch.n());
    do {
        if (!patch.interior(idx, 1)) continue;
        size_t f = patch.flat(idx);
        pts[f] = point_geometry(patch, f);
        valid[f] = 1;
    } while (next_index(idx, patch.extents()));
    return CurvatureField(patch, std::move(pts), std::move(valid));
}

MatrixGrid weingarten_field(const GraphPatch& patch) {
    int n = patch.n();
    for (int e : patch.extents())
        if (e < 5) throw std::domain_error("weingarten_field: need >= 5 points per axis");

    // N_j = u_j / W on the 1-ring interior
    std::vector<Eigen::VectorXd> N(patch.size());
    std::vector<int> idx = first_index(n);
    do {
        if (!patch.interior(idx, 1)) continue;
        size_t f = patch.flat(idx);
        Eigen::VectorXd Du(n);
        for (int a = 0; a < n; ++a) Du[a] = d1(patch, f, a);
        N[f] = Du / std::sqrt(1.0 + Du.squaredNorm());
    } while (next_index(idx, patch.extents()));

    MatrixGrid w;
    w.n = n;
    w.ext = patch.extents();
    w.spacing = patch.spacing();
    w.ring = 2;
    w.m.resize(patch.size());
    idx = first_index(n);
    do {
        if (!patch.interior(idx, 2)) continue;
        size_t f = patch.flat(idx);
        Eigen::MatrixXd M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                M(i, j) = (N[patch.shift(f, i, 1)][j] - N[patch.shift(f, i, -1)][j]) /
                          (2 * patch.spacing());
        w.m[f] = std::move(M);
    } while (next_index(idx, patch.extents()));
    return w;
}

double lift_mean_curvature_norm(const KappaVector& kappa) {
    double s = 0;
    for (double k : kappa.values()) {
        double t = k * k;
        s += std::isfinite(t) ? t / (1.0 + t) : 1.0;
    }
    return (kappa.n() + 2) * std::sqrt(s);
}

double b_quantity(const KappaVector& kappa, double J) {
    double H = 0;
    for (double k : kappa.values()) H += k;
    if (!(H + J > 0))
        throw std::domain_error("b_quantity: H + J must be positive");
    return std::log(H + J);
}

double default_J(int n) { return 4.0 * n * n * n; }

DistanceClaim anisotropic_distance(const CurvatureField& field,
                                   const std::vector<int>& base_index) {
    const GraphPatch& patch = field.patch();
    int n = patch.n();
    if (!patch.interior(base_index, 1))
        throw std::invalid_argument("anisotropic_distance: base must be interior");
    size_t fb = patch.flat(base_index);
    const CurvaturePoint& base = field.at(fb);

    std::vector<double> x0 = patch.point(base_index);
    double u0 = patch.u(fb);
    Eigen::VectorXd nu0(n + 1);
    nu0.head(n) = base.Du / base.W;
    nu0[n] = -1.0 / base.W;

    DistanceClaim out;
    out.r.assign(patch.size(), std::numeric_limits<double>::quiet_NaN());

    std::vector<int> idx = first_index(n);
    do {
        if (!patch.interior(idx, 1)) continue;
        size_t f = patch.flat(idx);
        const CurvaturePoint& pt = field.at(f);
        std::vector<double> x = patch.point(idx);
        double d2x = 0;
        for (int a = 0; a < n; ++a) d2x += (x[a] - x0[a]) * (x[a] - x0[a]);
        double du = patch.u(f) - u0;
        Eigen::VectorXd nu(n + 1);
        nu.head(n) = pt.Du / pt.W;
        nu[n] = -1.0 / pt.W;
        double r2 = d2x + du * du + 2.0 - 2.0 * nu.dot(nu0);
        out.r[f] = std::sqrt(std::max(0.0, r2));
    } while (next_index(idx, patch.extents()));

    out.max_gradient_form = 0;
    idx = first_index(n);
    do {
        if (!patch.interior(idx, 2)) continue;
        size_t f = patch.flat(idx);
        if (!(out.r[f] > patch.spacing())) continue;
        Eigen::VectorXd Dr(n);
        for (int a = 0; a < n; ++a)
            Dr[a] = (out.r[patch.shift(f, a, 1)] - out.r[patch.shift(f, a, -1)]) /
                    (2 * patch.spacing());
        const CurvaturePoint& pt = field.at(f);
        // lift metric in the chart: g + h g^{-1} h
        Eigen::MatrixXd chartG = pt.g + pt.h * pt.ginv * pt.h;
        double val = Dr.dot(chartG.ldlt().solve(Dr));
        if (val > out.max_gradient_form) out.max_gradient_form = val;
        ++out.points_checked;
    } while (next_index(idx, patch.extents()));
    return out;
}

double area_integral(const CurvatureField& field, double radius) {
    const GraphPatch& patch = field.patch();
    int n = patch.n();
    std::vector<double> center(n);
    for (int a = 0; a < n; ++a)
        center[a] = patch.origin()[a] + 0.5 * patch.spacing() * (patch.extents()[a] - 1);
    double cell = std::pow(patch.spacing(), n);
    double total = 0;
    std::vector<int> idx = first_index(n);
    do {
        if (!patch.interior(idx, 1)) continue;
        size_t f = patch.flat(idx);
        std::vector<double> x = patch.point(idx);
        double d2 = 0;
        for (int a = 0; a < n; ++a) d2 += (x[a] - center[a]) * (x[a] - center[a]);
        if (d2 <= radius * radius) total += field.at(f).V * cell;
    } while (next_index(idx, patch.extents()));
    return total;
}

void write_curvature_csv(const CurvatureField& field, std::ostream& os) {
    const GraphPatch& patch = field.patch();
    int n = patch.n();
    for (int a = 0; a < n; ++a) os << "x" << (a + 1) << ",";
    os << "u,W";
    for (int i = 0; i < n; ++i) os << ",kappa" << (i + 1);
    os << ",H,V\n";
    std::vector<int> idx = first_index(n);
    do {
        size_t f = patch.flat(idx);
        if (!field.valid(f)) continue;
        const CurvaturePoint& pt = field.at(f);
        for (int a = 0; a < n; ++a) os << g17(patch.coord(a, idx[a])) << ",";
        os << g17(patch.u(f)) << "," << g17(pt.W);
        for (double k : pt.kappa) os << "," << g17(k);
        os << "," << g17(pt.H) << "," << g17(pt.V) << "\n";
    } while (next_index(idx, patch.extents()));
}

} // namespace slc
