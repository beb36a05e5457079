#include "conewave/christoffel.hpp"

#include <functional>

namespace conewave {

namespace {

void require_inside(const MediumField& m, double t, const Vec2& x) {
    if (!m.domain().contains(x))
        throw Error(ErrorCode::DomainEdge, "evaluation point outside the medium domain");
    if (t < 0.0)
        throw Error(ErrorCode::DomainEdge, "evaluation time before the scenario start");
}

Sym3T<Dual3> g_matrix_G_dual(const MediumField& m, double t, const Vec2& x,
                             const SpacetimeVec& dir) {
    const Dual3 td = Dual3::seeded(t, 0);
    const Dual3 xd = Dual3::seeded(x.x, 1);
    const Dual3 yd = Dual3::seeded(x.y, 2);
    const ZermeloTN<Dual3, 2> z = zermelo_from_ellipse_t<Dual3>(m.ellipse(td, xd, yd));
    const SymN<Dual3, 2> gf = randers_fundamental_tensor<Dual3, 2>(z, to_array(dir.v));
    Sym3T<Dual3> g;
    g(0, 0) = Dual3(1.0);
    g(0, 1) = g(1, 0) = Dual3(0.0);
    g(0, 2) = g(2, 0) = Dual3(0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i + 1, j + 1) = -gf[i][j];
    return g;
}

Sym3T<Dual3> lorentz_dual(const MediumField& m, double t, const Vec2& x) {
    const Dual3 td = Dual3::seeded(t, 0);
    const Dual3 xd = Dual3::seeded(x.x, 1);
    const Dual3 yd = Dual3::seeded(x.y, 2);
    const ZermeloTN<Dual3, 2> z = zermelo_from_ellipse_t<Dual3>(m.ellipse(td, xd, yd));
    const VecN<Dual3, 2> hw = mat_vec<Dual3, 2>(z.h, z.wind);
    Sym3T<Dual3> g;
    g(0, 0) = Dual3(1.0) - (z.wind[0] * hw[0] + z.wind[1] * hw[1]);
    for (int i = 0; i < 2; ++i) {
        g(0, i + 1) = hw[i];
        g(i + 1, 0) = hw[i];
        for (int j = 0; j < 2; ++j) g(i + 1, j + 1) = -z.h[i][j];
    }
    return g;
}

// gamma^k_ij = 1/2 g^{kr} (d_i g_rj + d_j g_ri - d_r g_ij)
Christoffels assemble(const Sym3& g, const double dg[3][3][3], ChristoffelRoute route) {
    const Sym3 ginv = inverse3(g);
    Christoffels ch;
    ch.route = route;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                double acc = 0.0;
                for (int r = 0; r < 3; ++r)
                    acc += ginv(k, r) * (dg[i][r][j] + dg[j][r][i] - dg[r][i][j]);
                ch.gamma[k][i][j] = 0.5 * acc;
                ch.gamma[k][j][i] = ch.gamma[k][i][j];
            }
    return ch;
}

Christoffels from_dual(const Sym3T<Dual3>& gd, ChristoffelRoute route) {
    Sym3 g;
    double dg[3][3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            g(i, j) = gd(i, j).v;
            for (int r = 0; r < 3; ++r) dg[r][i][j] = gd(i, j).d[r];
        }
    return assemble(g, dg, route);
}

// FD route: sample the metric matrix around the base point.
Christoffels finite_difference(const MediumField& m, double t, const Vec2& x, double step,
                               ChristoffelRoute route,
                               const std::function<Sym3(double, const Vec2&)>& metric) {
    if (!m.domain().contains(x, step))
        throw Error(ErrorCode::DomainEdge, "FD stencil leaves the medium domain");

    Sym3 g = metric(t, x);
    double dg[3][3][3];

    auto store = [&](int axis, const Sym3& plus, const Sym3& minus) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) dg[axis][i][j] = (plus(i, j) - minus(i, j)) / (2.0 * step);
    };

    if (t >= step) {
        store(0, metric(t + step, x), metric(t - step, x));
    } else {
        // one-sided, second order: (-3 g0 + 4 g1 - g2) / (2 step)
        const Sym3 g1 = metric(t + step, x);
        const Sym3 g2 = metric(t + 2.0 * step, x);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                dg[0][i][j] = (-3.0 * g(i, j) + 4.0 * g1(i, j) - g2(i, j)) / (2.0 * step);
    }
    store(1, metric(t, {x.x + step, x.y}), metric(t, {x.x - step, x.y}));
    store(2, metric(t, {x.x, x.y + step}), metric(t, {x.x, x.y - step}));
    return assemble(g, dg, route);
}

} // namespace

Sym3 g_matrix_G(const MediumField& m, double t, const Vec2& x, const SpacetimeVec& dir) {
    require_inside(m, t, x);
    if (!(norm(dir.v) > 0.0))
        throw Error(ErrorCode::ZeroVector, "direction parallel to d/dt");
    const ZermeloData z = m.zermelo(t, x);
    const SymN<double, 2> gf = fundamental_tensor_F(z, dir.v);
    Sym3 g;
    g(0, 0) = 1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i + 1, j + 1) = -gf[i][j];
    return g;
}

Sym3 lorentz_metric(const MediumField& m, double t, const Vec2& x) {
    require_inside(m, t, x);
    const ZermeloData z = m.zermelo(t, x);
    const VecN<double, 2> hw = mat_vec<double, 2>(z.h, z.wind);
    Sym3 g;
    g(0, 0) = 1.0 - (z.wind[0] * hw[0] + z.wind[1] * hw[1]);
    for (int i = 0; i < 2; ++i) {
        g(0, i + 1) = hw[i];
        g(i + 1, 0) = hw[i];
        for (int j = 0; j < 2; ++j) g(i + 1, j + 1) = -z.h[i][j];
    }
    return g;
}

Christoffels formal_christoffels(const MediumField& m, double t, const Vec2& x,
                                 const SpacetimeVec& dir) {
    require_inside(m, t, x);
    // domain guard: the tensor must exist at (t, x, dir)
    (void)fundamental_tensor_F(m.zermelo(t, x), dir.v);
    return from_dual(g_matrix_G_dual(m, t, x, dir), ChristoffelRoute::FormalG);
}

Christoffels lorentz_christoffels(const MediumField& m, double t, const Vec2& x) {
    require_inside(m, t, x);
    return from_dual(lorentz_dual(m, t, x), ChristoffelRoute::LorentzRanders);
}

Christoffels formal_christoffels_fd(const MediumField& m, double t, const Vec2& x,
                                    const SpacetimeVec& dir, double step) {
    return finite_difference(m, t, x, step, ChristoffelRoute::FormalG,
                             [&](double tt, const Vec2& p) { return g_matrix_G(m, tt, p, dir); });
}

Christoffels lorentz_christoffels_fd(const MediumField& m, double t, const Vec2& x, double step) {
    return finite_difference(m, t, x, step, ChristoffelRoute::LorentzRanders,
                             [&](double tt, const Vec2& p) { return lorentz_metric(m, tt, p); });
}

} // namespace conewave
