#include "conewave/geodesic.hpp"

namespace conewave {

namespace {

// Cone-boundary guard: false when the state can no longer be integrated on
// the first-arrival branch.
bool state_admissible(const MediumField& m, double t, const GeodesicState& s, double margin) {
    if (!m.domain().contains(s.x)) return false;
    const ConicEval e = finsler_eval(m.zermelo(t, s.x), s.xdot);
    if (!e.in_domain || !e.F) return false;
    if (e.F_l && (*e.F_l - *e.F) / *e.F < margin) return false;
    return true;
}

} // namespace

std::array<double, 3> geodesic_rhs3(const MediumField& m, double t, const GeodesicState& s,
                                    Route route) {
    const Christoffels ch = route == Route::FormalG
                                ? formal_christoffels(m, t, s.x, SpacetimeVec{1.0, s.xdot})
                                : lorentz_christoffels(m, t, s.x);
    const double vhat[3] = {1.0, s.xdot.x, s.xdot.y};
    double c[3];
    for (int k = 0; k < 3; ++k) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc += ch.gamma[k][i][j] * vhat[i] * vhat[j];
        c[k] = acc;
    }
    return {-c[0] + c[0] * vhat[0], -c[1] + c[0] * vhat[1], -c[2] + c[0] * vhat[2]};
}

Vec2 geodesic_rhs(const MediumField& m, double t, const GeodesicState& s, Route route) {
    const std::array<double, 3> r = geodesic_rhs3(m, t, s, route);
    return {r[1], r[2]};
}

StopStatus geodesic_step(const MediumField& m, double t, double dt, GeodesicState& s,
                         const IntegrateOptions& opts) {
    if (!state_admissible(m, t, s, opts.cone_margin)) {
        return m.domain().contains(s.x) ? StopStatus::ConeBoundary : StopStatus::DomainEdge;
    }

    struct Deriv {
        Vec2 dx, dv;
    };
    // stage failures (cone-boundary degeneration, domain exit) become early
    // stops, never exceptions
    auto eval = [&](double tt, const GeodesicState& st, Deriv& out) {
        if (!m.domain().contains(st.x)) return StopStatus::DomainEdge;
        try {
            out.dx = st.xdot;
            out.dv = geodesic_rhs(m, tt, st, opts.route);
        } catch (const Error& e) {
            return e.code() == ErrorCode::DomainEdge ? StopStatus::DomainEdge
                                                     : StopStatus::ConeBoundary;
        }
        return StopStatus::Completed;
    };

    Deriv k1, k2, k3, k4;
    GeodesicState tmp;
    StopStatus st;
    if ((st = eval(t, s, k1)) != StopStatus::Completed) return st;
    tmp = {s.x + k1.dx * (dt / 2), s.xdot + k1.dv * (dt / 2)};
    if ((st = eval(t + dt / 2, tmp, k2)) != StopStatus::Completed) return st;
    tmp = {s.x + k2.dx * (dt / 2), s.xdot + k2.dv * (dt / 2)};
    if ((st = eval(t + dt / 2, tmp, k3)) != StopStatus::Completed) return st;
    tmp = {s.x + k3.dx * dt, s.xdot + k3.dv * dt};
    if ((st = eval(t + dt, tmp, k4)) != StopStatus::Completed) return st;

    GeodesicState next;
    next.x = s.x + (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx) * (dt / 6.0);
    next.xdot = s.xdot + (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv) * (dt / 6.0);
    if (!state_admissible(m, t + dt, next, opts.cone_margin)) {
        return m.domain().contains(next.x) ? StopStatus::ConeBoundary : StopStatus::DomainEdge;
    }
    // renormalization is the caller's job so that drift can be measured first
    s = next;
    return StopStatus::Completed;
}

Trajectory integrate_geodesic(const MediumField& m, double t0, const GeodesicState& init,
                              double t_end, double dt, const IntegrateOptions& opts) {
    if (!(dt > 0.0))
        throw Error(ErrorCode::ValidationError, "integrate_geodesic requires dt > 0");
    {
        const ConicEval e = finsler_eval(m.zermelo(t0, init.x), init.xdot);
        if (!e.in_domain || !e.F || std::abs(*e.F - 1.0) > 1e-8)
            throw Error(ErrorCode::BadInitialSpeed, "initial velocity is not F-unit");
    }

    Trajectory traj;
    traj.route = opts.route;
    GeodesicState s = init;
    traj.samples.push_back({t0, s});

    const long n_steps = std::lround((t_end - t0) / dt);
    for (long i = 0; i < n_steps; ++i) {
        const double t = t0 + static_cast<double>(i) * dt;
        const StopStatus st = geodesic_step(m, t, dt, s, opts);
        if (st != StopStatus::Completed) {
            traj.status = st;
            return traj;
        }
        const double t_next = t0 + static_cast<double>(i + 1) * dt;
        const ConicEval e = finsler_eval(m.zermelo(t_next, s.x), s.xdot);
        traj.max_unit_drift = std::max(traj.max_unit_drift, std::abs(*e.F - 1.0));
        if (opts.renormalize) s.xdot = s.xdot / *e.F;
        traj.samples.push_back({t_next, s});
    }
    return traj;
}

} // namespace conewave
