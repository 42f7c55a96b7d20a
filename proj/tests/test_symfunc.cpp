#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "slc/geometry.hpp"
#include "slc/reference.hpp"
#include "slc/symfunc.hpp"

using namespace slc;
using namespace slc::test;

TEST_CASE("sigma_k basics") {
    KappaVector k({2.0, 2.0, -0.75});
    CHECK(sigma_k(k, 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sigma_k(KappaVector({1, 1, 1}), 0) == 1.0);
    CHECK_THROWS_AS(sigma_k(k, 4), std::invalid_argument);
    CHECK_THROWS_AS(sigma_k(k, -1), std::invalid_argument);

    // symbolic expansion for n = 3, k = 2
    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
        double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), c = rng.uniform(-2, 2);
        KappaVector kv({a, b, c});
        CHECK(sigma_k(kv, 2) ==
              doctest::Approx(a * b + a * c + b * c).epsilon(1e-12));
    }
}

TEST_CASE("sigma enumeration agrees with the convolution recurrence, n <= 12") {
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        int n = 2 + static_cast<int>(rng.index(11));
        std::vector<double> v(static_cast<size_t>(n));
        for (double& x : v) x = rng.uniform(-3, 3);
        std::vector<double> all = sigma_all(v);
        for (int k = 0; k <= n; ++k) {
            double en = sigma_k_enum(v, k);
            CHECK(std::abs(en - all[static_cast<size_t>(k)]) <=
                  1e-12 * (1.0 + std::abs(en)));
        }
    }
}

TEST_CASE("phase type invariants") {
    Phase ph(1.1, 3);
    CHECK(ph.theta_small == doctest::Approx(1.1 - kPi).epsilon(1e-14));
    CHECK_THROWS_AS(Phase(kPi, 2), std::invalid_argument);    // |Theta| = n*pi/2
    CHECK_THROWS_AS(Phase(-3 * kPi, 3), std::invalid_argument);
    CHECK_THROWS_AS(KappaVector({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(KappaVector({1.0, std::nan("")}), std::invalid_argument);
    // construction sorts descending
    KappaVector k({-1.0, 2.0, 0.5});
    CHECK(k[0] == 2.0);
    CHECK(k[2] == -1.0);
}

TEST_CASE("gamma cone membership") {
    CHECK(in_gamma_k(KappaVector({1, 1, 0}), 2));
    CHECK_FALSE(in_gamma_k(KappaVector({1, -1}), 1));
    CHECK(in_gamma_k(KappaVector({2, 2, -0.75}), 2));
    CHECK_THROWS_AS(in_gamma_k(KappaVector({1, 1}), 0), std::invalid_argument);
}

TEST_CASE("newton tensor recursion") {
    SUBCASE("T1 = sigma1 I - h") {
        Rng rng(3);
        Eigen::MatrixXd h = random_symmetric(4, rng);
        Eigen::MatrixXd t1 = newton_tensor(h, 1).entries;
        Eigen::MatrixXd want = h.trace() * Eigen::MatrixXd::Identity(4, 4) - h;
        CHECK((t1 - want).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("k outside 0..n is zero") {
        Eigen::MatrixXd h = Eigen::MatrixXd::Identity(3, 3);
        CHECK(newton_tensor(h, 4).entries.cwiseAbs().maxCoeff() == 0.0);
        CHECK(newton_tensor(h, -1).entries.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("diag(1,1,0), k=2") {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(3, 3);
        h(0, 0) = 1;
        h(1, 1) = 1;
        Eigen::MatrixXd t2 = newton_tensor(h, 2).entries;
        Eigen::MatrixXd want = Eigen::MatrixXd::Zero(3, 3);
        want(2, 2) = 1;
        CHECK((t2 - want).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("non-symmetric input is rejected") {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2, 2);
        h(0, 1) = 1;
        CHECK_THROWS_AS(newton_tensor(h, 1), std::invalid_argument);
    }
}

TEST_CASE("newton tensor vs generalized-Kronecker-delta sum (n <= 4)") {
    Rng rng(4);
    for (int t = 0; t < 500; ++t) {
        int n = 2 + static_cast<int>(rng.index(3));
        Eigen::MatrixXd h = random_symmetric(n, rng);
        for (int k = 0; k <= n; ++k) {
            Eigen::MatrixXd rec = newton_tensor(h, k).entries;
            Eigen::MatrixXd ora = newton_tensor_delta(h, k);
            double scale = 1.0 + ora.cwiseAbs().maxCoeff();
            CHECK((rec - ora).cwiseAbs().maxCoeff() / scale < 1e-10);
        }
    }
}

TEST_CASE("newton tensor vs determinant-minor oracle (n <= 6)") {
    Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        int n = 2 + static_cast<int>(rng.index(5));
        Eigen::MatrixXd h = random_symmetric(n, rng);
        for (int k = 0; k <= n; ++k) {
            Eigen::MatrixXd rec = newton_tensor(h, k).entries;
            Eigen::MatrixXd ora = newton_tensor_minor(h, k);
            double scale = 1.0 + ora.cwiseAbs().maxCoeff();
            CHECK((rec - ora).cwiseAbs().maxCoeff() / scale < 1e-10);
        }
    }
}

TEST_CASE("divergence-free identity under refinement") {
    // k = 1 is discretely exact for any height function: central-difference
    // partials commute, so div(T_1) = D_i(sum_j D_j N_j) - sum_j D_j D_i N_j
    // cancels to rounding. In 2D Cayley-Hamilton kills T_2 as well, so the
    // first order with genuine truncation error is k = 2 in 3D.
    auto quad_patch = [](int n, double h) {
        GraphPatch p = GraphPatch::box(n, std::vector<double>(n, 0.0), 0.5, h);
        std::vector<int> idx = first_index(n);
        do {
            std::vector<double> x = p.point(idx);
            double v = 0.1 * x[0];
            for (int a = 0; a < n; ++a)
                v += (0.3 - 0.11 * a) * x[a] * x[a] +
                     0.2 * x[a] * x[(a + 1) % n];
            p.u(p.flat(idx)) = v;
        } while (next_index(idx, p.extents()));
        return p;
    };
    SUBCASE("quadratic height, k = 1: exact to rounding at both spacings") {
        CHECK(divergence_free_check(weingarten_field(quad_patch(2, 1.0 / 16)), 1) < 1e-10);
        CHECK(divergence_free_check(weingarten_field(quad_patch(2, 1.0 / 32)), 1) < 1e-10);
    }
    SUBCASE("3D quadratic height, k = 2: second-order decay") {
        double r8 = divergence_free_check(weingarten_field(quad_patch(3, 1.0 / 8)), 2);
        double r16 = divergence_free_check(weingarten_field(quad_patch(3, 1.0 / 16)), 2);
        CHECK(r8 / r16 == doctest::Approx(4.0).epsilon(0.3));
    }

    SUBCASE("linear height has an exactly constant tensor field") {
        GraphPatch p = GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 16);
        std::vector<int> idx = first_index(2);
        do {
            std::vector<double> x = p.point(idx);
            p.u(p.flat(idx)) = 0.7 * x[0] - 0.4 * x[1] + 0.2;
        } while (next_index(idx, p.extents()));
        for (int k = 1; k <= 2; ++k)
            CHECK(divergence_free_check(weingarten_field(p), k) < 1e-12);
    }

    SUBCASE("hemisphere") {
        GraphPatch p = GraphPatch::box(2, {0, 0}, 0.5, 1.0 / 64);
        std::vector<int> idx = first_index(2);
        do {
            std::vector<double> x = p.point(idx);
            p.u(p.flat(idx)) = -std::sqrt(1.0 - x[0] * x[0] - x[1] * x[1]);
        } while (next_index(idx, p.extents()));
        CHECK(divergence_free_check(weingarten_field(p), 1) < 1e-2);
    }

    SUBCASE("too small a patch is a domain error") {
        GraphPatch p(2, {0, 0}, 0.25, {5, 5});
        CHECK_THROWS_AS(divergence_free_check(weingarten_field(p), 1),
                        std::domain_error);
    }
}

TEST_CASE("curvature operator forms") {
    CHECK(std::abs(slc_residual(KappaVector({1, 1}), Phase(kPi / 2, 2))) < 1e-15);
    CHECK(slc_residual(KappaVector({0, 0, 0}), Phase(0, 3)) == 0.0);
    CHECK(std::abs(slc_residual(KappaVector({2, 2, -0.75}), Phase(kPi / 2, 3))) < 1e-12);

    CHECK(std::abs(slc_algebraic(KappaVector({1, 1}), Phase(kPi / 2, 2))) < 1e-12);
    CHECK(slc_algebraic(KappaVector({0, 0}), Phase(0, 2)) == 0.0);

    Rng rng(6);
    for (int t = 0; t < 500; ++t) {
        int n = 2 + static_cast<int>(rng.index(5));
        Phase ph(rng.uniform(-onphase_bound(n), onphase_bound(n)), n);
        KappaVector k = make_on_phase(n, ph, rng);
        std::vector<double> sig = sigma_all(k.values());
        double scale = 1;
        for (double s : sig) scale += std::abs(s);
        CHECK(std::abs(slc_algebraic(k, ph)) < 1e-9 * scale);
    }
}

TEST_CASE("theta-form equals Theta-form for arbitrary kappa") {
    Rng rng(7);
    for (int t = 0; t < 2000; ++t) {
        int n = 2 + static_cast<int>(rng.index(5));
        KappaVector k = random_kappa(n, rng);
        Phase ph(rng.uniform(-n * kPi / 2 + 0.05, n * kPi / 2 - 0.05), n);
        std::vector<double> sig = sigma_all(k.values());
        double scale = 1;
        for (double s : sig) scale += std::abs(s);
        CHECK(std::abs(slc_algebraic_big(sig, ph) - slc_algebraic_small(sig, ph)) <=
              1e-10 * scale);
    }
}

TEST_CASE("on-phase sampler") {
    SUBCASE("n=2, Theta=pi/2: kappa2 = 1/kappa1, kappa1 >= 1") {
        Rng rng(8);
        Phase ph(kPi / 2, 2);
        for (int t = 0; t < 200; ++t) {
            KappaVector k = make_on_phase(2, ph, rng);
            CHECK(k[0] >= 1.0 - 1e-12);
            CHECK(k[1] == doctest::Approx(1.0 / k[0]).epsilon(1e-10));
            CHECK(std::abs(slc_residual(k, ph)) < 1e-12);
            CHECK(is_on_phase(k, ph));
        }
    }
    SUBCASE("critical phase output is admissible") {
        Rng rng(9);
        Phase ph(Phase::critical(3), 3);
        for (int t = 0; t < 200; ++t)
            CHECK(in_gamma_k(make_on_phase(3, ph, rng), 2));
    }
    SUBCASE("near-maximal phase forces convexity") {
        Rng rng(10);
        Phase ph(3 * kPi / 2 - 0.01, 3);
        KappaVector k = make_on_phase(3, ph, rng, 1e-3, 20000000);
        CHECK(k[2] > 0.0);
    }
    SUBCASE("rejection exhaustion is reported") {
        Rng rng(11);
        Phase ph(3 * kPi / 2 - 0.01, 3);
        CHECK_THROWS_AS(make_on_phase(3, ph, rng, 1e-3, 10), std::runtime_error);
    }
}

TEST_CASE("volume factor") {
    VolumeFactor vf = volume_factor(KappaVector({1, 1}), Phase(kPi / 2, 2));
    CHECK(vf.V1 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(vf.V2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(vf.V == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(volume_factor(KappaVector({0, 0}), Phase(0, 2)).V == 1.0);

    SUBCASE("product identity holds for arbitrary kappa") {
        Rng rng(12);
        for (int t = 0; t < 2000; ++t) {
            int n = 2 + static_cast<int>(rng.index(5));
            KappaVector k = random_kappa(n, rng);
            VolumeFactor v = volume_factor(k, Phase(0.3, n));
            double prod = 1;
            for (double x : k.values()) prod *= 1 + x * x;
            CHECK(std::abs(v.V1 * v.V1 + v.V2 * v.V2 - prod) <= 1e-9 * prod);
        }
    }
    SUBCASE("on-phase: V >= 1 and V = sqrt(prod)") {
        Rng rng(13);
        for (int t = 0; t < 1000; ++t) {
            int n = 2 + static_cast<int>(rng.index(5));
            Phase ph(rng.uniform(-onphase_bound(n), onphase_bound(n)), n);
            KappaVector k = make_on_phase(n, ph, rng);
            VolumeFactor v = volume_factor(k, ph);
            double prod = 1;
            for (double x : k.values()) prod *= 1 + x * x;
            CHECK(v.V >= 1.0 - 1e-12);
            CHECK(std::abs(v.V * v.V - prod) <= 1e-9 * prod);
        }
    }
}

TEST_CASE("linearization") {
    SUBCASE("h = diag(1,1), Theta = pi/2") {
        Eigen::MatrixXd h = Eigen::MatrixXd::Identity(2, 2);
        Phase ph(kPi / 2, 2);
        Eigen::MatrixXd F = linearization(h, ph);
        CHECK((F - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
        double V = volume_factor(KappaVector({1, 1}), ph).V;
        Eigen::MatrixXd Ginv = 0.5 * Eigen::MatrixXd::Identity(2, 2);
        CHECK((F / V - Ginv).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("h = 0, Theta = 0") {
        Eigen::MatrixXd F = linearization(Eigen::MatrixXd::Zero(3, 3), Phase(0, 3));
        CHECK((F - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("F G = V I on-phase, and F is positive definite in Gamma_{n-1}") {
        Rng rng(14);
        for (int t = 0; t < 500; ++t) {
            int n = 3 + static_cast<int>(rng.index(3));
            Phase ph(rng.uniform(-onphase_bound(n), onphase_bound(n)), n);
            KappaVector k = make_on_phase(n, ph, rng);
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
            for (int i = 0; i < n; ++i) h(i, i) = k[i];
            Eigen::MatrixXd F = linearization(h, ph);
            Eigen::MatrixXd G = Eigen::MatrixXd::Identity(n, n) + h * h;
            double V = volume_factor(k, ph).V;
            CHECK((F * G - V * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <
                  1e-9 * V);
            if (in_gamma_k(k, n - 1)) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F);
                CHECK(es.eigenvalues()[0] > 0.0);
            }
        }
    }
    SUBCASE("matches finite differences of the algebraic form") {
        Rng rng(15);
        for (int t = 0; t < 40; ++t) {
            int n = 3;
            Eigen::MatrixXd h = random_symmetric(n, rng, 1.0);
            Phase ph(rng.uniform(-1.2, 1.2), n);
            Eigen::MatrixXd F = linearization(h, ph);
            double delta = 1e-5;
            auto Fof = [&](const Eigen::MatrixXd& hh) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hh);
                std::vector<double> ev(es.eigenvalues().data(),
                                       es.eigenvalues().data() + n);
                std::vector<double> sig = sigma_all(ev);
                return slc_algebraic_big(sig, ph);
            };
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    Eigen::MatrixXd hp = h, hm = h;
                    hp(i, j) += delta;
                    hp(j, i) = hp(i, j);
                    hm(i, j) -= delta;
                    hm(j, i) = hm(i, j);
                    double fd = (Fof(hp) - Fof(hm)) / (2 * delta);
                    double want = (i == j) ? F(i, i) : 2 * F(i, j);
                    CHECK(fd == doctest::Approx(want).epsilon(5e-5));
                }
        }
    }
    SUBCASE("non-symmetric input is rejected") {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2, 2);
        h(0, 1) = 0.5;
        CHECK_THROWS_AS(linearization(h, Phase(0.1, 2)), std::invalid_argument);
    }
}

TEST_CASE("ordered-kappa inequality on Gamma_{n-1}") {
    Rng rng(16);
    for (int n = 3; n <= 6; ++n)
        for (int t = 0; t < 1000; ++t) {
            KappaVector k = random_gamma(n, rng);
            for (int i = 0; i + 1 < n; ++i) {
                double scale = 1 + std::abs(k[i]) + std::abs(k[n - 1]);
                CHECK(k[i] + (n - 1 - i) * k[n - 1] >= -1e-12 * scale);
            }
        }
}

TEST_CASE("diagonal Newton tensor bound (effective constant)") {
    Rng rng(17);
    for (int t = 0; t < 500; ++t) {
        int n = 3 + static_cast<int>(rng.index(4));
        Phase ph(Phase::critical(n), n);
        KappaVector k = make_on_phase(n, ph, rng, 0.1);
        if (!in_gamma_k(k, n - 1)) continue;
        VolumeFactor v = volume_factor(k, ph);
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) h(i, i) = k[i];
        for (int kk = 1; kk <= n - 1; ++kk) {
            Eigen::MatrixXd t_prev = newton_tensor(h, kk - 1).entries;
            double binom = 1;
            for (int j = 0; j < kk - 1; ++j) binom = binom * (n - 1 - j) / (j + 1);
            for (int i = 0; i < n; ++i) {
                double gii = 1.0 / (1.0 + k[i] * k[i]);
                CHECK(t_prev(i, i) <= binom * std::sqrt(gii) * v.V * (1 + 1e-9) + 1e-9);
            }
        }
    }
}
