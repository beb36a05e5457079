#pragma once

#include <cmath>
#include <optional>

#include "conewave/dual.hpp"
#include "conewave/errors.hpp"
#include "conewave/linalg.hpp"

namespace conewave {

// ---------------------------------------------------------------------------
// Zermelo data and wind regimes
// ---------------------------------------------------------------------------

// Velocity oval at a spacetime point: ellipse with semi-axes a >= b rotated
// clockwise by theta, displaced by the wind (wx, wy).
template <class T>
struct EllipseT {
    T a{};
    T b{};
    T theta{};
    T wx{};
    T wy{};
};
using EllipseParams = EllipseT<double>;

// Riemannian metric h plus wind vector W; h-unit sphere displaced by W is the
// propagation-velocity oval.
template <class T, int N>
struct ZermeloTN {
    SymN<T, N> h{};
    VecN<T, N> wind{};
};
using ZermeloData = ZermeloTN<double, 2>;

enum class WindRegimeTag { Mild, Critical, Strong };

struct WindRegime {
    WindRegimeTag tag = WindRegimeTag::Mild;
    double h_ww = 0.0; // h(W, W) exactly as computed
};

// |h(W,W) - 1| below this counts as critical wind.
inline constexpr double kCriticalWindTol = 1e-9;

// Metric of the rotated ellipse: the quadratic form Q(v) = v^T h v recovers
// ((v1 cos θ - v2 sin θ)/a)^2 + ((v1 sin θ + v2 cos θ)/b)^2.
template <class T>
ZermeloTN<T, 2> zermelo_from_ellipse_t(const EllipseT<T>& e) {
    const T s = sin(e.theta);
    const T c = cos(e.theta);
    const T a2 = e.a * e.a;
    const T b2 = e.b * e.b;
    const T inv = T(1.0) / (a2 * b2);
    ZermeloTN<T, 2> z;
    z.h[0][0] = (a2 * s * s + b2 * c * c) * inv;
    z.h[0][1] = (a2 - b2) * s * c * inv;
    z.h[1][0] = z.h[0][1];
    z.h[1][1] = (a2 * c * c + b2 * s * s) * inv;
    z.wind[0] = e.wx;
    z.wind[1] = e.wy;
    return z;
}

ZermeloData zermelo_from_ellipse(const EllipseParams& e);
WindRegime classify_wind(const ZermeloData& z);

// ---------------------------------------------------------------------------
// Norm evaluation
// ---------------------------------------------------------------------------

// Roots of (1 - h(W,W)) F^2 + 2 h(v,W) F - h(v,v) = 0.  F is the root with the
// larger speed along v (smaller arrival time); under strong wind the second
// positive root F_l exists and bounds F from above.
template <int N>
struct NormRoots {
    double F = 0.0;
    double F_l = 0.0;
    bool in_domain = false;
    bool has_F_l = false;
};

template <int N>
NormRoots<N> zermelo_roots(const ZermeloTN<double, N>& z, const VecN<double, N>& v) {
    const double q = quad_form<double, N>(z.h, v, v);
    if (!(q > 0.0))
        throw Error(ErrorCode::ZeroVector, "finsler_eval requires v != 0");
    const double m = quad_form<double, N>(z.h, v, z.wind);
    const double lam = 1.0 - quad_form<double, N>(z.h, z.wind, z.wind);
    NormRoots<N> r;
    const double disc = m * m + lam * q;
    if (disc < 0.0) return r; // direction outside the cone of admissible velocities
    const double s = std::sqrt(disc);
    if (!(s + m > 0.0)) return r; // no positive root: outside the cone closure
    r.in_domain = true;
    r.F = q / (s + m); // cancellation-free form of (-m + s)/lam
    if (lam < -kCriticalWindTol) {
        r.has_F_l = true;
        r.F_l = (m + s) / (-lam);
    }
    return r;
}

struct ConicEval {
    std::optional<double> F;   // conic Finsler norm (first-arrival branch)
    std::optional<double> F_l; // Lorentzian-Finsler branch, strong wind only
    bool in_domain = false;    // v inside the closure of the admissible cone A
    WindRegime regime;
};

ConicEval finsler_eval(const ZermeloData& z, const Vec2& v);

// ---------------------------------------------------------------------------
// Fundamental tensor g_v = 1/2 Hess(F^2) and orthogonality
// ---------------------------------------------------------------------------

// Closed form for Zermelo/Randers data, valid in mild and strong regimes on
// the F branch (strictly inside the cone).  Scalar-generic so base-point
// derivatives can be taken with dual numbers; the direction v is held at
// fixed coordinates.
template <class T, int N>
SymN<T, N> randers_fundamental_tensor(const ZermeloTN<T, N>& z, const VecN<double, N>& v_in) {
    VecN<T, N> v;
    for (int i = 0; i < N; ++i) v[i] = T(v_in[i]);

    VecN<T, N> hv = mat_vec<T, N>(z.h, v);
    VecN<T, N> w = mat_vec<T, N>(z.h, z.wind); // lowered wind, d/dv of h(v,W)
    T q(0.0), m(0.0), ww(0.0);
    for (int i = 0; i < N; ++i) {
        q += v[i] * hv[i];
        m += v[i] * w[i];
        ww += z.wind[i] * w[i];
    }
    const T lam = T(1.0) - ww;
    const T disc = m * m + lam * q;
    const T s = sqrt(disc);
    const T sm = s + m;
    const T F = q / sm;

    // dF = [dq (s+m) - q (ds + dm)] / (s+m)^2, with ds = (m w + lam hv)/s
    VecN<T, N> dF;
    const T inv_sm2 = T(1.0) / (sm * sm);
    for (int i = 0; i < N; ++i) {
        const T ds = (m * w[i] + lam * hv[i]) / s;
        dF[i] = (T(2.0) * hv[i] * sm - q * (ds + w[i])) * inv_sm2;
    }

    // Hess F = h/s + [q w w^T - m (w hv^T + hv w^T) - lam hv hv^T] / s^3
    const T inv_s = T(1.0) / s;
    const T inv_s3 = inv_s / disc;
    SymN<T, N> g;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const T hess = z.h[i][j] * inv_s +
                           (q * w[i] * w[j] - m * (w[i] * hv[j] + hv[i] * w[j]) -
                            lam * hv[i] * hv[j]) * inv_s3;
            g[i][j] = dF[i] * dF[j] + F * hess;
        }
    return g;
}

// Generic route: central second differences of F^2, usable for any oval
// family reachable through zermelo_roots; kept as the cross-check for the
// closed form above.
template <int N>
SymN<double, N> fundamental_tensor_fd(const ZermeloTN<double, N>& z, const VecN<double, N>& v,
                                      double rel_step = 1e-5) {
    double vnorm = 0.0;
    for (int i = 0; i < N; ++i) vnorm += v[i] * v[i];
    vnorm = std::sqrt(vnorm);
    const double step = rel_step * std::max(1.0, vnorm);

    auto f2 = [&](const VecN<double, N>& u) {
        NormRoots<N> r = zermelo_roots<N>(z, u);
        if (!r.in_domain)
            throw Error(ErrorCode::DegenerateDirection,
                        "FD stencil for the fundamental tensor leaves the cone domain");
        return r.F * r.F;
    };

    const double f0 = f2(v);
    SymN<double, N> g;
    for (int i = 0; i < N; ++i) {
        VecN<double, N> up = v, dn = v;
        up[i] += step;
        dn[i] -= step;
        g[i][i] = 0.5 * (f2(up) - 2.0 * f0 + f2(dn)) / (step * step);
    }
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            VecN<double, N> pp = v, pm = v, mp = v, mm = v;
            pp[i] += step; pp[j] += step;
            pm[i] += step; pm[j] -= step;
            mp[i] -= step; mp[j] += step;
            mm[i] -= step; mm[j] -= step;
            g[i][j] = 0.5 * (f2(pp) - f2(pm) - f2(mp) + f2(mm)) / (4.0 * step * step);
            g[j][i] = g[i][j];
        }
    return g;
}

SymN<double, 2> fundamental_tensor_F(const ZermeloData& z, const Vec2& v);
SymN<double, 2> fundamental_tensor_F_fd(const ZermeloData& z, const Vec2& v,
                                        double rel_step = 1e-5);

// g_v(v, w) = 1/2 d/dδ F^2(v + δw)|_0 by central difference on F^2 directly.
double orthogonality_residual(const ZermeloData& z, const Vec2& v, const Vec2& w);

enum class NormalSide { HintSide, OppositeSide }; // OppositeSide: u - W anti-hint

// F-unit vector F-orthogonal to the tangent: u = v + W with v the h-unit
// h-orthogonal to tangent on the outward-hint side.  Under strong wind,
// whether the returned u lies on the F or the F_l branch depends on the
// wind; OppositeSide exposes the other normal for extinction analysis.
Vec2 unit_normal(const ZermeloData& z, const Vec2& tangent, const Vec2& outward_hint,
                 NormalSide side = NormalSide::HintSide);

// True when u sits on the first-arrival (convex) portion of the velocity
// oval, i.e. h(u - W, u) > 0.  Always true in mild wind.
bool on_first_arrival_branch(const ZermeloData& z, const Vec2& u);

} // namespace conewave
