#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conewave/geodesic.hpp"

using namespace conewave;

namespace {

const Domain kBox{-6.0, 6.0, -6.0, 6.0, 6.0};

MediumField make_medium(const std::string& a, const std::string& b, const std::string& theta,
                        const std::string& wx, const std::string& wy) {
    return medium_from_expressions(a, b, theta, wx, wy, kBox);
}

Vec2 unit_speed(const MediumField& m, double t, const Vec2& p, const Vec2& dir) {
    const ConicEval e = finsler_eval(m.zermelo(t, p), dir);
    REQUIRE(e.F);
    return dir / *e.F;
}

} // namespace

TEST_CASE("geodesic_rhs: vanishes on homogeneous media, both routes") {
    const MediumField m = make_medium("1.4", "0.8", "0.3", "0.25", "-0.1");
    const GeodesicState s{{0.4, 0.5}, {0.9, 0.2}};
    for (Route r : {Route::FormalG, Route::LorentzRanders}) {
        const Vec2 acc = geodesic_rhs(m, 0.5, s, r);
        CHECK(std::abs(acc.x) < 1e-13);
        CHECK(std::abs(acc.y) < 1e-13);
    }
}

TEST_CASE("geodesic_rhs: diagonal family matches the symbolic oracle") {
    // gamma^0_11 = -adot/a^3, gamma^1_11 = -a'/a, gamma^1_01 = -adot/a,
    // gamma^2_22 = -b'/b for a = 1 + ka x + ca t, b = 1 + kb y
    const double ka = 0.1, ca = 0.05, kb = 0.08;
    const MediumField m = make_medium("1 + 0.1*x + 0.05*t", "1 + 0.08*y", "0", "0", "0");
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> up(-2.0, 2.0), ut(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double t = ut(rng);
        const Vec2 p{up(rng), up(rng)};
        const double av = 1 + ka * p.x + ca * t;
        const double bv = 1 + kb * p.y;
        // any velocity inside the oval works for the formal route
        const Vec2 v = unit_speed(m, t, p, {up(rng) + 2.5, up(rng)});

        const double g0vv = (-ca / (av * av * av)) * v.x * v.x;
        const Vec2 expected{-((-ka / av) * v.x * v.x + 2.0 * (-ca / av) * v.x) + g0vv * v.x,
                            -(-kb / bv) * v.y * v.y + g0vv * v.y};
        for (Route r : {Route::FormalG, Route::LorentzRanders}) {
            const Vec2 acc = geodesic_rhs(m, t, {p, v}, r);
            CHECK(acc.x == doctest::Approx(expected.x).epsilon(1e-8));
            CHECK(acc.y == doctest::Approx(expected.y).epsilon(1e-8));
        }
    }
}

TEST_CASE("geodesic_rhs3: time component vanishes identically") {
    const MediumField m =
        make_medium("1 + 0.2*sin(1.1*x)*cos(0.7*y)", "0.9 + 0.1*cos(y + t)", "0.3*sin(0.5*x)",
                    "0.3*cos(0.4*y)", "0.2*sin(0.6*x + t)");
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> up(-3.0, 3.0), ut(0.0, 3.0),
        uphi(0.0, 2.0 * M_PI);
    for (int i = 0; i < 100; ++i) {
        const double t = ut(rng);
        const Vec2 p{up(rng), up(rng)};
        const double phi = uphi(rng);
        const Vec2 v = unit_speed(m, t, p, {std::cos(phi), std::sin(phi)});
        for (Route r : {Route::FormalG, Route::LorentzRanders}) {
            const std::array<double, 3> rhs = geodesic_rhs3(m, t, {p, v}, r);
            CHECK(std::abs(rhs[0]) < 1e-10);
        }
    }
}

TEST_CASE("integrate_geodesic: straight unit-speed ray in the isotropic medium") {
    const MediumField m = make_medium("1", "1", "0", "0", "0");
    IntegrateOptions o;
    const Trajectory tr = integrate_geodesic(m, 0.0, {{0, 0}, {1, 0}}, 1.0, 1e-3, o);
    REQUIRE(tr.status == StopStatus::Completed);
    const GeodesicState& last = tr.samples.back().state;
    CHECK(std::abs(last.x.x - 1.0) < 1e-9);
    CHECK(std::abs(last.x.y) < 1e-12);
}

TEST_CASE("integrate_geodesic: homogeneous wind gives a linear drifting ray") {
    const MediumField m = make_medium("1", "1", "0", "0.5", "0");
    IntegrateOptions o;
    const Trajectory tr = integrate_geodesic(m, 0.0, {{0, 0}, {1.5, 0}}, 2.0, 1e-3, o);
    REQUIRE(tr.status == StopStatus::Completed);
    CHECK(std::abs(tr.samples.back().state.x.x - 3.0) < 1e-9);
}

TEST_CASE("integrate_geodesic: rejects non-unit initial speed") {
    const MediumField m = make_medium("1", "1", "0", "0", "0");
    IntegrateOptions o;
    CHECK_THROWS_AS((void)integrate_geodesic(m, 0.0, {{0, 0}, {1.5, 0}}, 1.0, 1e-3, o), Error);
}

TEST_CASE("integrate_geodesic: the two routes agree on a varying Randers medium") {
    const MediumField m =
        make_medium("1 + 0.12*sin(1.1*x)*cos(0.9*y)", "0.9", "0.2*sin(0.7*x)", "0.4", "0.15");
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * M_PI);
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double phi = uphi(rng);
        const Vec2 p{0.8 * std::cos(phi), 0.8 * std::sin(phi)};
        const Vec2 v = unit_speed(m, 0.0, p, {std::cos(phi), std::sin(phi)});
        IntegrateOptions o;
        o.renormalize = false;
        o.route = Route::FormalG;
        const Trajectory a = integrate_geodesic(m, 0.0, {p, v}, 1.0, 1e-3, o);
        o.route = Route::LorentzRanders;
        const Trajectory b = integrate_geodesic(m, 0.0, {p, v}, 1.0, 1e-3, o);
        REQUIRE(a.status == StopStatus::Completed);
        REQUIRE(b.status == StopStatus::Completed);
        for (size_t k = 0; k < a.samples.size(); ++k)
            worst = std::max(worst, dist(a.samples[k].state.x, b.samples[k].state.x));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("integrate_geodesic: unit-speed drift is O(dt^4) without projection") {
    const MediumField m =
        make_medium("1 + 0.25*sin(1.3*x)*cos(0.9*y)", "0.85 + 0.12*cos(1.1*y)",
                    "0.3*sin(0.6*x)", "0", "0");
    const Vec2 p{0.9, 0.1};
    const Vec2 v = unit_speed(m, 0.0, p, {0.8, 0.6});
    IntegrateOptions o;
    o.renormalize = false;
    auto drift = [&](double dt) {
        const Trajectory tr = integrate_geodesic(m, 0.0, {p, v}, 1.0, dt, o);
        REQUIRE(tr.status == StopStatus::Completed);
        return tr.max_unit_drift;
    };
    const double e1 = drift(1e-2);
    const double e2 = drift(5e-3);
    const double order = std::log2(e1 / e2);
    CHECK(order > 2.0);
    CHECK(order < 8.0);

    // with projection the drift is removed after every step
    o.renormalize = true;
    const Trajectory tr = integrate_geodesic(m, 0.0, {p, v}, 1.0, 1e-2, o);
    double residual = 0.0;
    for (const TrajectorySample& s : tr.samples) {
        const ConicEval e = finsler_eval(m.zermelo(s.t, s.state.x), s.state.xdot);
        residual = std::max(residual, std::abs(*e.F - 1.0));
    }
    CHECK(residual < 1e-12);
}

TEST_CASE("integrate_geodesic: fourth-order endpoint convergence") {
    const MediumField m =
        make_medium("1 + 0.2*sin(1.2*x)*cos(0.8*y)", "0.9", "0.25*sin(0.5*x)", "0.2", "0.1");
    const Vec2 p{0.0, 0.0};
    const Vec2 v = unit_speed(m, 0.0, p, {0.7, 0.7});
    IntegrateOptions o;
    o.renormalize = false;
    auto endpoint = [&](double dt) {
        const Trajectory tr = integrate_geodesic(m, 0.0, {p, v}, 1.0, dt, o);
        REQUIRE(tr.status == StopStatus::Completed);
        return tr.samples.back().state.x;
    };
    const Vec2 ref = endpoint(1.0 / 1024.0);
    const double e1 = dist(endpoint(1.0 / 64.0), ref);
    const double e2 = dist(endpoint(1.0 / 128.0), ref);
    CHECK(e1 / e2 > 10.0);
    CHECK(e1 / e2 < 24.0);
}

TEST_CASE("integrate_geodesic: time-translation covariance in static media") {
    const MediumField m =
        make_medium("1 + 0.15*sin(x)*cos(y)", "0.9 + 0.1*cos(y)", "0.2*sin(0.5*x)", "0.1", "0.2");
    const Vec2 p{0.3, -0.4};
    const Vec2 v = unit_speed(m, 0.0, p, {1.0, 0.3});
    IntegrateOptions o;
    const Trajectory a = integrate_geodesic(m, 0.0, {p, v}, 1.0, 1e-3, o);
    const Trajectory b = integrate_geodesic(m, 5.0 - 5.0, {p, v}, 1.0, 1e-3, o);
    // same start state yields the same samples; now shift the start time
    const Trajectory c = [&] {
        const Trajectory tr = integrate_geodesic(m, 2.0, {p, v}, 3.0, 1e-3, o);
        return tr;
    }();
    REQUIRE(a.samples.size() == c.samples.size());
    double worst = 0.0;
    for (size_t k = 0; k < a.samples.size(); ++k)
        worst = std::max(worst, dist(a.samples[k].state.x, c.samples[k].state.x));
    CHECK(worst < 1e-12);
    CHECK(b.samples.size() == a.samples.size());
}

TEST_CASE("integrate_geodesic: stops at the cone boundary under strong wind") {
    // uniform wind growing in time narrows the cone; the heading
    // (-1/2, sqrt(3)/2) relative to the medium reaches the cone edge exactly
    // when the wind speed hits 2, i.e. at t = 0.5
    const MediumField m = make_medium("1", "1", "0", "1.5 + t", "0");
    const Vec2 p{0.0, 0.0};
    const Vec2 v{1.5 - 0.5, std::sqrt(3.0) / 2.0};
    IntegrateOptions o;
    const Trajectory tr = integrate_geodesic(m, 0.0, {p, v}, 2.0, 1e-3, o);
    CHECK(tr.status == StopStatus::ConeBoundary);
    REQUIRE(tr.samples.size() > 1);
    CHECK(tr.samples.back().t == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("integrate_geodesic: truncates at the domain edge without extrapolating") {
    const MediumField m = make_medium("1", "1", "0", "0", "0");
    IntegrateOptions o;
    const Trajectory tr = integrate_geodesic(m, 0.0, {{5.0, 0.0}, {1.0, 0.0}}, 3.0, 1e-3, o);
    CHECK(tr.status == StopStatus::DomainEdge);
    CHECK(tr.samples.back().state.x.x <= 6.0 + 1e-12);
}
