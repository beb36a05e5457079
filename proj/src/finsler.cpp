#include "conewave/finsler.hpp"

namespace conewave {

ZermeloData zermelo_from_ellipse(const EllipseParams& e) {
    if (!(e.a > 0.0) || !(e.b > 0.0))
        throw Error(ErrorCode::NonPositiveAxis, "ellipse semi-axes must be positive");
    return zermelo_from_ellipse_t<double>(e);
}

WindRegime classify_wind(const ZermeloData& z) {
    WindRegime r;
    r.h_ww = quad_form<double, 2>(z.h, z.wind, z.wind);
    if (std::abs(r.h_ww - 1.0) < kCriticalWindTol)
        r.tag = WindRegimeTag::Critical;
    else if (r.h_ww < 1.0)
        r.tag = WindRegimeTag::Mild;
    else
        r.tag = WindRegimeTag::Strong;
    return r;
}

ConicEval finsler_eval(const ZermeloData& z, const Vec2& v) {
    ConicEval out;
    out.regime = classify_wind(z);
    NormRoots<2> roots = zermelo_roots<2>(z, to_array(v));
    out.in_domain = roots.in_domain;
    if (roots.in_domain) out.F = roots.F;
    if (roots.has_F_l) out.F_l = roots.F_l;
    return out;
}

namespace {

// Tensor evaluation requires v strictly inside the cone; near the boundary
// the Hessian degenerates like 1/s^3.
void require_tensor_domain(const ZermeloData& z, const Vec2& v) {
    NormRoots<2> roots = zermelo_roots<2>(z, to_array(v));
    if (!roots.in_domain)
        throw Error(ErrorCode::OutsideCone, "fundamental tensor undefined outside the cone");
    if (roots.has_F_l && roots.F_l - roots.F < 1e-8 * roots.F)
        throw Error(ErrorCode::DegenerateDirection,
                    "fundamental tensor degenerates on the cone boundary");
}

} // namespace

SymN<double, 2> fundamental_tensor_F(const ZermeloData& z, const Vec2& v) {
    require_tensor_domain(z, v);
    return randers_fundamental_tensor<double, 2>(z, to_array(v));
}

SymN<double, 2> fundamental_tensor_F_fd(const ZermeloData& z, const Vec2& v, double rel_step) {
    require_tensor_domain(z, v);
    return fundamental_tensor_fd<2>(z, to_array(v), rel_step);
}

double orthogonality_residual(const ZermeloData& z, const Vec2& v, const Vec2& w) {
    require_tensor_domain(z, v);
    const double wn = norm(w);
    if (!(wn > 0.0)) return 0.0;
    const double step = 1e-5 * std::max(1.0, norm(v)) / wn;
    auto f2 = [&](const Vec2& u) {
        NormRoots<2> r = zermelo_roots<2>(z, to_array(u));
        if (!r.in_domain)
            throw Error(ErrorCode::DegenerateDirection,
                        "orthogonality stencil leaves the cone domain");
        return r.F * r.F;
    };
    return 0.25 * (f2(v + w * step) - f2(v - w * step)) / step;
}

Vec2 unit_normal(const ZermeloData& z, const Vec2& tangent, const Vec2& outward_hint,
                 NormalSide side) {
    const double tn = norm(tangent);
    if (!(tn > 0.0))
        throw Error(ErrorCode::DegenerateTangent, "unit_normal requires a nonzero tangent");
    if (std::abs(cross(tangent, outward_hint)) <= 1e-12 * tn * norm(outward_hint))
        throw Error(ErrorCode::DegenerateTangent,
                    "outward hint is parallel to the tangent");

    // v0 = h^{-1} * perp(tangent) is h-orthogonal to the tangent.
    Vec2 v0 = solve_spd2(z.h, perp_cw(tangent));
    const double vv = quad_form<double, 2>(z.h, to_array(v0), to_array(v0));
    v0 = v0 / std::sqrt(vv);
    if (dot(v0, outward_hint) < 0.0) v0 = v0 * -1.0;
    if (side == NormalSide::OppositeSide) v0 = v0 * -1.0;
    return v0 + from_array(z.wind);
}

bool on_first_arrival_branch(const ZermeloData& z, const Vec2& u) {
    const Vec2 v = u - from_array(z.wind);
    return quad_form<double, 2>(z.h, to_array(v), to_array(u)) > 0.0;
}

} // namespace conewave
