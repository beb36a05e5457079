#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conewave/christoffel.hpp"

using namespace conewave;

namespace {

const Domain kBox{-5.0, 5.0, -5.0, 5.0, 2.0};

MediumField make_medium(const std::string& a, const std::string& b, const std::string& theta,
                        const std::string& wx, const std::string& wy) {
    return medium_from_expressions(a, b, theta, wx, wy, kBox);
}

// Hand-derived symbols for the diagonal family
//   a(t,x) = 1 + ka*x + ca*t,  b(y) = 1 + kb*y,  theta = 0, W = 0,
// where g = diag(1, -1/a^2, -1/b^2).  Nonzero entries:
//   gamma^0_11 = -da/dt / a^3, gamma^1_11 = -da/dx / a,
//   gamma^1_01 = gamma^1_10 = -da/dt / a, gamma^2_22 = -db/dy / b.
struct DiagonalOracle {
    double ka, ca, kb;
    double a(double t, double x) const { return 1.0 + ka * x + ca * t; }
    double b(double y) const { return 1.0 + kb * y; }
    void fill(double t, const Vec2& p, double gamma[3][3][3]) const {
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) gamma[k][i][j] = 0.0;
        const double av = a(t, p.x);
        const double bv = b(p.y);
        gamma[0][1][1] = -ca / (av * av * av);
        gamma[1][1][1] = -ka / av;
        gamma[1][0][1] = gamma[1][1][0] = -ca / av;
        gamma[2][2][2] = -kb / bv;
    }
};

} // namespace

TEST_CASE("g_matrix_G: Minkowski block for the isotropic medium") {
    const MediumField m = make_medium("1", "1", "0", "0", "0");
    const Sym3 g = g_matrix_G(m, 0.3, {0.5, -0.2}, {1.0, {1.0, 0.0}});
    CHECK(g(0, 0) == doctest::Approx(1.0));
    CHECK(g(1, 1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(g(2, 2) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(g(0, 1)) < 1e-15);
    CHECK(std::abs(g(1, 2)) < 1e-12);
}

TEST_CASE("g_matrix_G: Riemannian medium reproduces h and is 0-homogeneous") {
    const MediumField m = make_medium("2", "1", "0", "0", "0");
    const Sym3 g1 = g_matrix_G(m, 0.0, {0.0, 0.0}, {1.0, {2.0, 0.0}});
    CHECK(g1(1, 1) == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(g1(2, 2) == doctest::Approx(-1.0).epsilon(1e-12));

    const Sym3 g2 = g_matrix_G(m, 0.0, {0.0, 0.0}, {1.0, {2.0 * 7.3, 0.0}});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(g1(i, j) == doctest::Approx(g2(i, j)).epsilon(1e-12));
}

TEST_CASE("lorentz_metric: examples across wind regimes") {
    {
        const MediumField m = make_medium("1", "1", "0", "0", "0");
        const Sym3 g = lorentz_metric(m, 0.0, {0, 0});
        CHECK(g(0, 0) == doctest::Approx(1.0));
        CHECK(g(1, 1) == doctest::Approx(-1.0));
        CHECK(g(2, 2) == doctest::Approx(-1.0));
        CHECK(std::abs(g(0, 1)) < 1e-15);
    }
    {
        const MediumField m = make_medium("1", "1", "0", "0.5", "0");
        const Sym3 g = lorentz_metric(m, 0.0, {0, 0});
        CHECK(g(0, 0) == doctest::Approx(0.75));
        CHECK(g(0, 1) == doctest::Approx(0.5));
        CHECK(g(1, 0) == doctest::Approx(0.5));
        CHECK(g(1, 1) == doctest::Approx(-1.0));
        CHECK(std::abs(g(0, 2)) < 1e-15);
        CHECK(g(2, 2) == doctest::Approx(-1.0));
    }
    {
        // d/dt spacelike under strong wind, the metric stays Lorentzian
        const MediumField m = make_medium("1", "1", "0", "2", "0");
        const Sym3 g = lorentz_metric(m, 0.0, {0, 0});
        CHECK(g(0, 0) == doctest::Approx(-3.0));
        CHECK(g(0, 1) == doctest::Approx(2.0));
        CHECK(g(1, 1) == doctest::Approx(-1.0));
        CHECK(g(2, 2) == doctest::Approx(-1.0));
        CHECK(std::abs(det3(g)) > 1e-6);
    }
}

TEST_CASE("lorentz_metric: lightlike vectors coincide with F-unit velocities") {
    const MediumField m = make_medium("1.3", "0.8", "0.4", "0.3", "-0.1");
    const Vec2 p{0.7, -0.4};
    const ZermeloData z = m.zermelo(0.2, p);
    const Sym3 g = lorentz_metric(m, 0.2, p);
    for (double phi : {0.0, 0.9, 2.2, 4.0, 5.7}) {
        const Vec2 dir{std::cos(phi), std::sin(phi)};
        const ConicEval e = finsler_eval(z, dir);
        REQUIRE(e.F);
        const Vec2 u = dir / *e.F;
        const double vhat[3] = {1.0, u.x, u.y};
        double quad = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) quad += g(i, j) * vhat[i] * vhat[j];
        CHECK(std::abs(quad) < 1e-12);
    }
}

TEST_CASE("christoffels vanish on homogeneous media") {
    const MediumField m = make_medium("1.7", "0.9", "0.5", "0.3", "0.2");
    const Christoffels f = formal_christoffels(m, 0.4, {1.0, -2.0}, {1.0, {1.2, 0.3}});
    const Christoffels l = lorentz_christoffels(m, 0.4, {1.0, -2.0});
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(std::abs(f.gamma[k][i][j]) < 1e-14);
                CHECK(std::abs(l.gamma[k][i][j]) < 1e-14);
            }
}

TEST_CASE("formal_christoffels: symmetry and direction 0-homogeneity") {
    const MediumField m =
        make_medium("1 + 0.1*x + 0.05*t", "1 + 0.08*y", "0.1*sin(x)", "0.2", "0.1*cos(y)");
    const Vec2 p{0.4, -0.6};
    const SpacetimeVec dir{1.0, {0.9, 0.35}};
    const Christoffels g1 = formal_christoffels(m, 0.3, p, dir);
    const Christoffels g2 = formal_christoffels(m, 0.3, p, {1.0, dir.v * 4.7});
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(g1.gamma[k][i][j] == doctest::Approx(g1.gamma[k][j][i]).epsilon(1e-14));
                CHECK(std::abs(g1.gamma[k][i][j] - g2.gamma[k][i][j]) < 1e-10);
            }
}

TEST_CASE("diagonal family: both routes match the symbolic oracle") {
    const DiagonalOracle oracle{0.1, 0.05, 0.08};
    const MediumField m = make_medium("1 + 0.1*x + 0.05*t", "1 + 0.08*y", "0", "0", "0");
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> up(-2.0, 2.0), ut(0.0, 1.5), uphi(0.0, 2 * M_PI);
    for (int trial = 0; trial < 25; ++trial) {
        const double t = ut(rng);
        const Vec2 p{up(rng), up(rng)};
        double expected[3][3][3];
        oracle.fill(t, p, expected);

        const double phi = uphi(rng);
        const Christoffels f = formal_christoffels(m, t, p, {1.0, {std::cos(phi), std::sin(phi)}});
        const Christoffels l = lorentz_christoffels(m, t, p);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    CHECK(std::abs(f.gamma[k][i][j] - expected[k][i][j]) < 1e-5);
                    CHECK(std::abs(l.gamma[k][i][j] - expected[k][i][j]) < 1e-5);
                }
    }
}

TEST_CASE("FD route: converges quadratically to the dual-number route") {
    const MediumField m =
        make_medium("1 + 0.15*sin(1.2*x)*cos(0.8*y)", "0.9 + 0.1*cos(y)", "0.2*sin(x)",
                    "0.25*cos(0.5*y + t)", "0.2*sin(0.4*x)");
    const Vec2 p{0.6, -0.3};
    const SpacetimeVec dir{1.0, {1.1, 0.4}};
    const double t = 0.5;

    const Christoffels exact = formal_christoffels(m, t, p, dir);
    auto err = [&](double step) {
        const Christoffels fd = formal_christoffels_fd(m, t, p, dir, step);
        double worst = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    worst = std::max(worst,
                                     std::abs(fd.gamma[k][i][j] - exact.gamma[k][i][j]));
        return worst;
    };
    const double e1 = err(2e-3);
    const double e2 = err(1e-3);
    CHECK(e1 < 1e-4);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.5);

    // the Lorentz route FD path agrees too
    const Christoffels lexact = lorentz_christoffels(m, t, p);
    const Christoffels lfd = lorentz_christoffels_fd(m, t, p, 1e-4 * kBox.extent());
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(lfd.gamma[k][i][j] - lexact.gamma[k][i][j]) < 1e-5);
}

TEST_CASE("FD route: one-sided time stencil at t = 0 stays accurate") {
    const MediumField m = make_medium("1 + 0.1*x + 0.05*t", "1", "0", "0", "0");
    const DiagonalOracle oracle{0.1, 0.05, 0.0};
    const Vec2 p{0.5, 0.0};
    double expected[3][3][3];
    oracle.fill(0.0, p, expected);
    const Christoffels fd = formal_christoffels_fd(m, 0.0, p, {1.0, {1.0, 0.0}}, 1e-4);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(fd.gamma[k][i][j] - expected[k][i][j]) < 1e-5);
}

TEST_CASE("FD route: stencil outside the domain raises DomainEdge") {
    const MediumField m = make_medium("1 + 0.1*x", "1", "0", "0", "0");
    CHECK_THROWS_AS((void)formal_christoffels_fd(m, 0.0, {4.99999, 0.0}, {1.0, {1.0, 0.0}}, 1e-3),
                    Error);
}

TEST_CASE("metric compatibility of the Lorentz route") {
    const MediumField m =
        make_medium("1 + 0.12*sin(x)*cos(y)", "0.9", "0.15*cos(x)", "0.3", "0.1*sin(y + t)");
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> up(-2.0, 2.0), ut(0.1, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        const double t = ut(rng);
        const Vec2 p{up(rng), up(rng)};
        const Christoffels ch = lorentz_christoffels(m, t, p);

        const double step = 1e-4;
        auto metric_at = [&](double tt, const Vec2& pp) { return lorentz_metric(m, tt, pp); };
        for (int kk = 0; kk < 3; ++kk) {
            Sym3 gp, gm;
            if (kk == 0) {
                gp = metric_at(t + step, p);
                gm = metric_at(t - step, p);
            } else if (kk == 1) {
                gp = metric_at(t, {p.x + step, p.y});
                gm = metric_at(t, {p.x - step, p.y});
            } else {
                gp = metric_at(t, {p.x, p.y + step});
                gm = metric_at(t, {p.x, p.y - step});
            }
            const Sym3 g = metric_at(t, p);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double dg = (gp(i, j) - gm(i, j)) / (2.0 * step);
                    double rhs = 0.0;
                    for (int r = 0; r < 3; ++r)
                        rhs += g(r, j) * ch.gamma[r][kk][i] + g(i, r) * ch.gamma[r][kk][j];
                    CHECK(std::abs(dg - rhs) < 1e-5);
                }
        }
    }
}

TEST_CASE("both routes evaluate on identical lightlike inputs") {
    const MediumField m = make_medium("1 + 0.1*sin(x)", "0.9", "0.1*y", "0.2*cos(t)", "0.1");
    const Vec2 p{0.3, 0.8};
    const ZermeloData z = m.zermelo(0.2, p);
    const ConicEval e = finsler_eval(z, {1.0, 0.4});
    REQUIRE(e.F);
    const Vec2 u = Vec2{1.0, 0.4} / *e.F;
    CHECK_NOTHROW((void)formal_christoffels(m, 0.2, p, {1.0, u}));
    CHECK_NOTHROW((void)lorentz_christoffels(m, 0.2, p));
}
