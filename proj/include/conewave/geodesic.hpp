#pragma once

#include <vector>

#include "conewave/christoffel.hpp"

namespace conewave {

using Route = ChristoffelRoute;

struct GeodesicState {
    Vec2 x;    // position
    Vec2 xdot; // d/dt position; on a cone geodesic F(xdot) = 1
};

// d^2/dt^2 x^k = -gamma^k_ij vhat^i vhat^j + gamma^0_ij vhat^i vhat^j xdot^k
// with vhat = (1, xdot); sums run over 0..2.  The k = 0 component of the same
// expression vanishes identically, which geodesic_rhs3 exposes for testing.
Vec2 geodesic_rhs(const MediumField& m, double t, const GeodesicState& s, Route route);
std::array<double, 3> geodesic_rhs3(const MediumField& m, double t, const GeodesicState& s,
                                    Route route);

enum class StopStatus { Completed, ConeBoundary, DomainEdge };

struct TrajectorySample {
    double t;
    GeodesicState state;
};

struct Trajectory {
    std::vector<TrajectorySample> samples; // strictly increasing t, fixed step
    Route route = Route::FormalG;
    StopStatus status = StopStatus::Completed;
    double max_unit_drift = 0.0; // max |F(xdot) - 1| observed
};

struct IntegrateOptions {
    Route route = Route::FormalG;
    bool renormalize = true; // project xdot back to F = 1 after each step
    // Abort when (F_l - F)/F falls below this margin (direction approaching
    // the cone boundary under strong wind).
    double cone_margin = 1e-6;
};

// Classical fixed-step RK4 on the first-order system (x, xdot).  Mid-flight
// domain exit or cone-boundary contact truncates the trajectory with the
// corresponding status; the medium is never extrapolated.
Trajectory integrate_geodesic(const MediumField& m, double t0, const GeodesicState& init,
                              double t_end, double dt, const IntegrateOptions& opts);

// Single RK4 step used by both the trajectory driver and the front marcher.
// Returns Completed, or a truncation status with `s` untouched.
StopStatus geodesic_step(const MediumField& m, double t, double dt, GeodesicState& s,
                         const IntegrateOptions& opts);

} // namespace conewave
