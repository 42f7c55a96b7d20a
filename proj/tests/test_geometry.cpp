#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <sstream>

#include "helpers.hpp"
#include "slc/geometry.hpp"
#include "slc/solver.hpp"

using namespace slc;
using namespace slc::test;

namespace {

GraphPatch fill(GraphPatch p, double (*f)(double, double)) {
    std::vector<int> idx = first_index(2);
    do {
        std::vector<double> x = p.point(idx);
        p.u(p.flat(idx)) = f(x[0], x[1]);
    } while (next_index(idx, p.extents()));
    return p;
}

} // namespace

TEST_CASE("constant patch") {
    GraphPatch p = fill(GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 8),
                        [](double, double) { return 3.25; });
    CurvatureField f = curvature_field(p);
    std::vector<int> idx = first_index(2);
    do {
        size_t fl = p.flat(idx);
        if (!f.valid(fl)) continue;
        const CurvaturePoint& pt = f.at(fl);
        CHECK(pt.W == 1.0);
        CHECK(pt.V == 1.0);
        CHECK(std::abs(pt.kappa[0]) < 1e-14);
        CHECK(std::abs(pt.kappa[1]) < 1e-14);
        CHECK((pt.G - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    } while (next_index(idx, p.extents()));
}

TEST_CASE("paraboloid at the origin") {
    GraphPatch p = fill(GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 16),
                        [](double x, double y) { return 0.5 * (x * x + y * y); });
    CurvatureField f = curvature_field(p);
    size_t c = p.flat(p.center_index());
    const CurvaturePoint& pt = f.at(c);
    CHECK(pt.W == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((pt.g - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(pt.kappa[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pt.kappa[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sphere cap has constant curvature 1/R to O(h^2)") {
    const double R = 2.0;
    auto worst_err = [&](double h) {
        GraphPatch geom = GraphPatch::box(2, {0, 0}, 0.5, h);
        GraphPatch p = sphere_cap_reference(R, geom);
        CurvatureField f = curvature_field(p);
        double worst = 0;
        std::vector<int> idx = first_index(2);
        do {
            size_t fl = p.flat(idx);
            if (!f.valid(fl)) continue;
            for (double k : f.at(fl).kappa)
                worst = std::max(worst, std::abs(k - 1.0 / R));
        } while (next_index(idx, p.extents()));
        return worst;
    };
    double e16 = worst_err(1.0 / 16), e32 = worst_err(1.0 / 32);
    CHECK(e16 < 2e-3);
    CHECK(e16 / e32 == doctest::Approx(4.0).epsilon(0.35));

    SUBCASE("mean curvature is n/R") {
        GraphPatch p = sphere_cap_reference(R, GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 32));
        CurvatureField f = curvature_field(p);
        size_t c = p.flat(p.center_index());
        CHECK(f.at(c).H == doctest::Approx(2.0 / R).epsilon(1e-3));
    }
}

TEST_CASE("det G = prod(1 + kappa^2) pointwise") {
    GraphPatch p = fill(GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 16),
                        [](double x, double y) {
                            return 0.4 * std::sin(2 * x) * std::cos(y) + 0.1 * x * y;
                        });
    CurvatureField f = curvature_field(p);
    std::vector<int> idx = first_index(2);
    do {
        size_t fl = p.flat(idx);
        if (!f.valid(fl)) continue;
        const CurvaturePoint& pt = f.at(fl);
        CHECK(std::abs(pt.G.determinant() - pt.detG) <= 1e-8 * pt.detG);
    } while (next_index(idx, p.extents()));
}

TEST_CASE("symmetric pencil spectrum equals eigenvalues of ginv h") {
    auto check_patch = [](const GraphPatch& p) {
        int n = p.n();
        CurvatureField f = curvature_field(p);
        std::vector<int> idx = first_index(n);
        do {
            size_t fl = p.flat(idx);
            if (!f.valid(fl)) continue;
            const CurvaturePoint& pt = f.at(fl);
            Eigen::EigenSolver<Eigen::MatrixXd> es(pt.ginv * pt.h);
            std::vector<double> ev(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) {
                CHECK(std::abs(es.eigenvalues()[i].imag()) < 1e-12);
                ev[static_cast<size_t>(i)] = es.eigenvalues()[i].real();
            }
            std::sort(ev.begin(), ev.end(), std::greater<double>());
            for (int i = 0; i < n; ++i)
                CHECK(pt.kappa[static_cast<size_t>(i)] ==
                      doctest::Approx(ev[static_cast<size_t>(i)]).epsilon(1e-9));
        } while (next_index(idx, p.extents()));
    };
    SUBCASE("n = 2") {
        check_patch(fill(GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 12),
                         [](double x, double y) {
                             return 0.5 * x * x - 0.3 * y * y + 0.4 * x * y + 0.6 * x;
                         }));
    }
    SUBCASE("n = 3") {
        GraphPatch p = GraphPatch::box(3, {0, 0, 0}, 0.4, 1.0 / 6);
        std::vector<int> idx = first_index(3);
        do {
            std::vector<double> x = p.point(idx);
            p.u(p.flat(idx)) = 0.4 * x[0] * x[0] - 0.2 * x[1] * x[2] +
                               0.3 * std::sin(x[0] + 2 * x[1]) + 0.5 * x[2];
        } while (next_index(idx, p.extents()));
        check_patch(p);
    }
}

TEST_CASE("weingarten routes agree to O(h^2)") {
    auto worst = [](double h) {
        GraphPatch p = fill(GraphPatch::box(2, {0, 0}, 0.5, h),
                            [](double x, double y) {
                                return 0.3 * std::sin(x + 0.4) * std::cos(2 * y);
                            });
        MatrixGrid w = weingarten_field(p);
        double err = 0;
        std::vector<int> idx = first_index(2);
        do {
            if (!p.interior(idx, 2)) continue;
            size_t fl = p.flat(idx);
            CurvaturePoint pt = point_geometry(p, fl);
            Eigen::MatrixXd route2 = pt.h * pt.ginv; // h_i^j = h_ik g^kj
            err = std::max(err, (w.m[fl] - route2).cwiseAbs().maxCoeff());
        } while (next_index(idx, p.extents()));
        return err;
    };
    double e16 = worst(1.0 / 16), e32 = worst(1.0 / 32);
    CHECK(e16 / e32 == doctest::Approx(4.0).epsilon(0.35));
}

TEST_CASE("lift mean-curvature bound") {
    CHECK(lift_mean_curvature_norm(KappaVector({0, 0, 0})) == 0.0);
    CHECK(lift_mean_curvature_norm(KappaVector({1, 1})) ==
          doctest::Approx(4.0).epsilon(1e-14));

    SUBCASE("saturation as kappa -> infinity") {
        int n = 3;
        double prev = 0;
        for (double t : {1.0, 10.0, 1e3, 1e6}) {
            double v = lift_mean_curvature_norm(KappaVector({t, t, t}));
            CHECK(v >= prev);
            CHECK(v <= (n + 2) * std::sqrt(static_cast<double>(n)));
            prev = v;
        }
        CHECK(prev == doctest::Approx(5 * std::sqrt(3.0)).epsilon(1e-9));
    }
    SUBCASE("bound holds for random kappa") {
        Rng rng(21);
        for (int t = 0; t < 10000; ++t) {
            int n = 2 + static_cast<int>(rng.index(5));
            KappaVector k = random_kappa(n, rng);
            CHECK(lift_mean_curvature_norm(k) <=
                  (n + 2) * std::sqrt(static_cast<double>(n)));
        }
    }
}

TEST_CASE("b quantity") {
    CHECK(b_quantity(KappaVector({0, 0, 0}), 108) == doctest::Approx(std::log(108.0)));
    CHECK(b_quantity(KappaVector({1, 1, 0}), 108) == doctest::Approx(std::log(110.0)));
    CHECK_THROWS_AS(b_quantity(KappaVector({-3, -3}), 1.0), std::domain_error);
    CHECK(default_J(3) == 108.0);
    CHECK(b_quantity(KappaVector({0, 0, 0})) == doctest::Approx(std::log(108.0)));

    SUBCASE("finite on admissible on-phase samples") {
        Rng rng(22);
        for (int t = 0; t < 500; ++t) {
            int n = 3 + static_cast<int>(rng.index(4));
            KappaVector k = make_on_phase(n, Phase(Phase::critical(n), n), rng);
            CHECK(std::isfinite(b_quantity(k)));
        }
    }
}

TEST_CASE("anisotropic distance") {
    SUBCASE("flat patch: r = |x - y0| and the gradient form is exactly 1") {
        GraphPatch p = GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 16);
        CurvatureField f = curvature_field(p);
        DistanceClaim d = anisotropic_distance(f, p.center_index());
        std::vector<int> idx = first_index(2);
        do {
            size_t fl = p.flat(idx);
            if (!p.interior(idx, 1)) continue;
            std::vector<double> x = p.point(idx);
            CHECK(d.r[fl] ==
                  doctest::Approx(std::hypot(x[0], x[1])).epsilon(1e-13));
        } while (next_index(idx, p.extents()));
        CHECK(d.max_gradient_form == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("analytic cap at h=1/64 satisfies the claim within tolerance") {
        GraphPatch p = sphere_cap_reference(
            1.0, GraphPatch::box(2, {0, 0}, 0.40625, 1.0 / 64));
        CurvatureField f = curvature_field(p);
        DistanceClaim d = anisotropic_distance(f, p.center_index());
        CHECK(d.max_gradient_form <= 1.0 + 5e-2);
        CHECK(d.points_checked > 1000);
    }
    SUBCASE("boundary base point is rejected") {
        GraphPatch p = GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 8);
        CurvatureField f = curvature_field(p);
        CHECK_THROWS_AS(anisotropic_distance(f, {0, 0}), std::invalid_argument);
    }
    SUBCASE("non-solution patches may exceed 1; the value is still returned") {
        GraphPatch p = fill(GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 24),
                            [](double x, double y) {
                                return 0.8 * std::sin(5 * x) * std::sin(5 * y);
                            });
        CurvatureField f = curvature_field(p);
        DistanceClaim d = anisotropic_distance(f, p.center_index());
        CHECK(std::isfinite(d.max_gradient_form));
    }
}

TEST_CASE("area integral") {
    SUBCASE("flat patch: integral is the counted cell area") {
        GraphPatch p = GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 16);
        CurvatureField f = curvature_field(p);
        double I = area_integral(f, 10.0);
        long count = 0;
        std::vector<int> idx = first_index(2);
        do {
            if (p.interior(idx, 1)) ++count;
        } while (next_index(idx, p.extents()));
        CHECK(I == doctest::Approx(count / 256.0).epsilon(1e-12));
    }
    SUBCASE("cap integral against finer quadrature") {
        auto I_at = [](double h) {
            GraphPatch p = sphere_cap_reference(
                1.0, GraphPatch::box(2, {0, 0}, 0.5, h));
            return area_integral(curvature_field(p), 0.4);
        };
        double coarse = I_at(1.0 / 32), fine = I_at(1.0 / 128);
        CHECK(std::abs(coarse - fine) <= 0.02 * fine);
        double coarse2 = I_at(1.0 / 64);
        CHECK(std::abs(coarse2 - fine) <= 0.01 * fine);
    }
}

TEST_CASE("curvature CSV") {
    GraphPatch p = GraphPatch::box(2, {0, 0}, 0.25, 1.0 / 8);
    CurvatureField f = curvature_field(p);
    std::ostringstream os;
    write_curvature_csv(f, os);
    std::string s = os.str();
    CHECK(s.substr(0, s.find('\n')) == "x1,x2,u,W,kappa1,kappa2,H,V");
    long rows = std::count(s.begin(), s.end(), '\n') - 1;
    CHECK(rows == 3 * 3); // 5x5 grid, 1-ring interior
}
