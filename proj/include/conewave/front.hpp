#pragma once

#include <limits>
#include <vector>

#include "conewave/geodesic.hpp"
#include "conewave/geometry.hpp"

namespace conewave {

enum class FrontMode { OutwardOnly, BothSides };
enum class Orientation { CCW, CW };
enum class MarkerStatus { Active, Extinct, Cut, LeftDomain };

const char* marker_status_name(MarkerStatus s);

struct InitialFront {
    std::vector<Vec2> ring; // simple closed polyline, >= 8 vertices
    Orientation orientation = Orientation::CCW;
    FrontMode mode = FrontMode::OutwardOnly;
};

struct FrontMarker {
    int s_index = 0;
    Vec2 x;
    Vec2 xdot;
    MarkerStatus status = MarkerStatus::Active;
    double lineage_s = 0.0; // originating arclength fraction on S0, in [0, 1)
};

// Wavefront at a fixed time: marker ring in the cyclic order of S0.  Extinct
// and LeftDomain markers stay in place as frozen chain delimiters; the active
// polyline is the Active subsequence.
struct Front {
    double t = 0.0;
    std::vector<FrontMarker> markers;
    Orientation orientation = Orientation::CCW;
    bool inward = false; // inner ring of a BothSides wave

    std::vector<Vec2> active_positions() const;
    bool all_active() const;
};

// Maximal runs of Active markers in cyclic order; a fully active ring is one
// closed chain.
struct Chain {
    std::vector<int> idx;
    bool closed = false;
};
std::vector<Chain> active_chains(const Front& f);

// Marker velocities from the normalized orthogonal bundle of S0.  OutwardOnly
// yields one front; BothSides adds the inward ring.  Under strong wind the
// outward choice applies to u - W and markers landing on the inbound branch
// are seeded Extinct.
std::vector<Front> seed_front(const MediumField& m, const InitialFront& f0);

struct ExtinctionPoint {
    double lineage_s = 0.0;
    Vec2 x;
};

struct ExtinctionResult {
    Front front; // statuses updated
    std::vector<ExtinctionPoint> points;
};

// Re-classifies strong-wind markers by velocity-oval branch and locates
// extinction points by the sign changes of cross(d_t f, d_s f) between
// adjacent markers (linear interpolation).
ExtinctionResult detect_extinction(const MediumField& m, const Front& front);

// Removes self-intersection loops of the active polyline, keeping the
// outermost boundary; removed markers get status Cut.  Idempotent.
Front untangle_front(const Front& front);

// One explicit step of the orthogonality PDE route (midpoint rule in time,
// centered tangents along the ring).  Mild wind only.
Front richards_step(const MediumField& m, const Front& front, double dt);

struct PropagateOptions {
    double dt = 1e-3;
    Route route = Route::FormalG;
    bool renormalize = true;
    bool resample = true;
    double resample_ratio = 4.0; // max/min active spacing triggering resample
    int target_markers = 0;      // 0: keep the seeded count
    double cone_margin = 1e-6;
};

struct PropagateDiagnostics {
    double first_cut_time = std::numeric_limits<double>::infinity();
    int topology_changes = 0;
    double max_unit_drift = 0.0;
    double max_ortho_residual = 0.0;
    int markers_left_domain = 0;
    int markers_extinct = 0;
};

struct PropagateResult {
    std::vector<Front> fronts; // seeded front first, then one per output time
    PropagateDiagnostics diag;
};

// Marches every Active marker's cone geodesic; at each output time applies
// extinction detection, untangling and (optionally) arclength resampling
// with velocities re-seeded from the local unit normal.
PropagateResult propagate_front_ode(const MediumField& m, const Front& front0,
                                    const std::vector<double>& output_times,
                                    const PropagateOptions& opts);

// Same driver with richards_step as the marcher (independent PDE route).
PropagateResult propagate_front_richards(const MediumField& m, const Front& front0,
                                         const std::vector<double>& output_times,
                                         const PropagateOptions& opts);

// Area swept by the active chains (plus the seed polygon in OutwardOnly
// mode), rasterized at the given cell size.
double burned_area(const std::vector<Front>& fronts, const std::vector<Vec2>* b0_polygon,
                   double cell);

} // namespace conewave
