#include "conewave/front.hpp"

#include <algorithm>
#include <cmath>

namespace conewave {

const char* marker_status_name(MarkerStatus s) {
    switch (s) {
        case MarkerStatus::Active: return "active";
        case MarkerStatus::Extinct: return "extinct";
        case MarkerStatus::Cut: return "cut";
        case MarkerStatus::LeftDomain: return "left_domain";
    }
    return "?";
}

std::vector<Vec2> Front::active_positions() const {
    std::vector<Vec2> out;
    out.reserve(markers.size());
    for (const FrontMarker& mk : markers)
        if (mk.status == MarkerStatus::Active) out.push_back(mk.x);
    return out;
}

bool Front::all_active() const {
    for (const FrontMarker& mk : markers)
        if (mk.status != MarkerStatus::Active) return false;
    return true;
}

std::vector<Chain> active_chains(const Front& f) {
    const int n = static_cast<int>(f.markers.size());
    std::vector<Chain> chains;
    if (n == 0) return chains;
    if (f.all_active()) {
        Chain c;
        c.closed = true;
        c.idx.resize(n);
        for (int i = 0; i < n; ++i) c.idx[i] = i;
        chains.push_back(std::move(c));
        return chains;
    }
    // find a non-active marker to anchor the cyclic split
    int start = -1;
    for (int i = 0; i < n; ++i)
        if (f.markers[i].status != MarkerStatus::Active) {
            start = i;
            break;
        }
    Chain cur;
    for (int k = 1; k <= n; ++k) {
        const int i = (start + k) % n;
        if (f.markers[i].status == MarkerStatus::Active) {
            cur.idx.push_back(i);
        } else if (!cur.idx.empty()) {
            chains.push_back(std::move(cur));
            cur = Chain{};
        }
    }
    if (!cur.idx.empty()) chains.push_back(std::move(cur));
    return chains;
}

namespace {

Vec2 ring_tangent(const std::vector<Vec2>& pts, int i, bool closed) {
    const int n = static_cast<int>(pts.size());
    if (closed) return pts[(i + 1) % n] - pts[(i - 1 + n) % n];
    if (i == 0) return pts[1] - pts[0];
    if (i == n - 1) return pts[n - 1] - pts[n - 2];
    return pts[i + 1] - pts[i - 1];
}

Vec2 outward_dir(const Vec2& tangent, Orientation orient, bool inward) {
    Vec2 o = perp_cw(tangent);
    if (orient == Orientation::CW) o = o * -1.0;
    if (inward) o = o * -1.0;
    return o;
}

// lineage values live on the unit circle; lerp across the wrap
double lerp_lineage(double a, double b, double u) {
    double d = b - a;
    if (d > 0.5) d -= 1.0;
    if (d < -0.5) d += 1.0;
    double v = a + u * d;
    v -= std::floor(v);
    return v;
}

void classify_strong_marker(const MediumField& m, double t, FrontMarker& mk) {
    if (mk.status != MarkerStatus::Active) return;
    const ZermeloData z = m.zermelo(t, mk.x);
    if (classify_wind(z).tag != WindRegimeTag::Strong) return;
    if (!on_first_arrival_branch(z, mk.xdot)) mk.status = MarkerStatus::Extinct;
}

} // namespace

std::vector<Front> seed_front(const MediumField& m, const InitialFront& f0) {
    const int n = static_cast<int>(f0.ring.size());
    if (n < 8)
        throw Error(ErrorCode::ValidationError, "initial front needs at least 8 vertices");
    if (!is_simple(f0.ring, true))
        throw Error(ErrorCode::ValidationError, "initial front is self-intersecting");
    {
        double mean = polyline_length(f0.ring, true) / n;
        for (int i = 0; i < n; ++i) {
            const double d = dist(f0.ring[i], f0.ring[(i + 1) % n]);
            if (d < 0.2 * mean || d > 5.0 * mean)
                throw Error(ErrorCode::DegenerateTangent,
                            "initial front spacing is too uneven; resample it first");
        }
    }
    const Orientation orient = signed_area(f0.ring) >= 0.0 ? Orientation::CCW : Orientation::CW;

    const double total_len = polyline_length(f0.ring, true);
    auto build = [&](bool inward) {
        Front f;
        f.t = 0.0;
        f.orientation = orient;
        f.inward = inward;
        f.markers.resize(n);
        double arc = 0.0;
        for (int i = 0; i < n; ++i) {
            const Vec2 tangent = ring_tangent(f0.ring, i, true);
            if (!(norm(tangent) > 0.0))
                throw Error(ErrorCode::DegenerateTangent, "degenerate tangent at a seed vertex");
            const Vec2 hint = outward_dir(tangent, orient, inward);
            const ZermeloData z = m.zermelo(0.0, f0.ring[i]);
            FrontMarker& mk = f.markers[i];
            mk.s_index = i;
            mk.x = f0.ring[i];
            mk.xdot = unit_normal(z, tangent, hint);
            mk.status = MarkerStatus::Active;
            mk.lineage_s = arc / total_len;
            arc += dist(f0.ring[i], f0.ring[(i + 1) % n]);
            if (f0.mode == FrontMode::OutwardOnly) classify_strong_marker(m, 0.0, mk);
        }
        return f;
    };

    std::vector<Front> out;
    out.push_back(build(false));
    if (f0.mode == FrontMode::BothSides) out.push_back(build(true));
    return out;
}

ExtinctionResult detect_extinction(const MediumField& m, const Front& front) {
    ExtinctionResult res;
    res.front = front;
    const int n = static_cast<int>(front.markers.size());
    if (n < 3) return res;

    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = front.markers[i].x;

    std::vector<char> strong(n, 0);
    std::vector<double> cr(n, 0.0);
    for (int i = 0; i < n; ++i) {
        FrontMarker& mk = res.front.markers[i];
        const ZermeloData z = m.zermelo(front.t, mk.x);
        strong[i] = classify_wind(z).tag == WindRegimeTag::Strong;
        if (strong[i] && mk.status == MarkerStatus::Active &&
            !on_first_arrival_branch(z, mk.xdot))
            mk.status = MarkerStatus::Extinct;
        cr[i] = cross(mk.xdot, ring_tangent(pts, i, true));
    }
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        if (!strong[i] && !strong[j]) continue;
        if (cr[i] == 0.0 || cr[i] * cr[j] >= 0.0) continue;
        const double u = cr[i] / (cr[i] - cr[j]);
        ExtinctionPoint p;
        p.x = pts[i] + (pts[j] - pts[i]) * u;
        p.lineage_s =
            lerp_lineage(front.markers[i].lineage_s, front.markers[j].lineage_s, u);
        res.points.push_back(p);
    }
    return res;
}

namespace {

// Winding test against the active polyline: a marker survives when the point
// just outside it (along the ring's outward side) is not enclosed.  On
// swallowtail loops the traversal direction reverses, the probe lands in the
// swept region and the marker is cut.
bool winding_cut_pass(Front& f, const std::vector<int>& idx, bool closed) {
    const int k = static_cast<int>(idx.size());
    std::vector<Vec2> poly(k);
    for (int i = 0; i < k; ++i) poly[i] = f.markers[idx[i]].x;
    const int expected = f.inward ? (f.orientation == Orientation::CCW ? 1 : -1) : 0;

    bool cut_any = false;
    for (int i = 0; i < k; ++i) {
        const Vec2 tangent = ring_tangent(poly, i, closed);
        Vec2 o = outward_dir(tangent, f.orientation, f.inward);
        const double on = norm(o);
        if (!(on > 0.0)) continue;
        const double d_prev = dist(poly[i], poly[(i - 1 + k) % k]);
        const double d_next = dist(poly[i], poly[(i + 1) % k]);
        const double delta = 0.25 * std::min(d_prev, d_next);
        const Vec2 probe = poly[i] + o * (delta / on);
        if (winding_number(poly, probe) != expected) {
            f.markers[idx[i]].status = MarkerStatus::Cut;
            cut_any = true;
        }
    }
    return cut_any;
}

// Fallback: drop the smaller loop at the first self-intersection.
bool loop_drop_pass(Front& f, const std::vector<int>& idx, bool closed) {
    const int k = static_cast<int>(idx.size());
    std::vector<Vec2> poly(k);
    for (int i = 0; i < k; ++i) poly[i] = f.markers[idx[i]].x;
    const auto [si, sj] = first_self_intersection(poly, closed);
    if (si < 0) return false;

    auto arc_area = [&](int from, int to) { // markers from+1..to, cyclic
        std::vector<Vec2> loop;
        for (int i = from + 1; i <= to; ++i) loop.push_back(poly[(i + k) % k]);
        return std::abs(signed_area(loop));
    };
    const double a_inner = arc_area(si, sj);
    const double a_outer = closed ? arc_area(sj, si + k) : std::numeric_limits<double>::max();
    if (a_inner <= a_outer) {
        for (int i = si + 1; i <= sj; ++i)
            f.markers[idx[(i + k) % k]].status = MarkerStatus::Cut;
    } else {
        for (int i = sj + 1; i <= si + k; ++i)
            f.markers[idx[(i + k) % k]].status = MarkerStatus::Cut;
    }
    return true;
}

} // namespace

Front untangle_front(const Front& front) {
    Front f = front;
    for (int pass = 0; pass < 16; ++pass) {
        const std::vector<Chain> chains = active_chains(f);
        bool any_tangled = false;
        for (const Chain& c : chains) {
            if (c.idx.size() < 4) continue;
            std::vector<Vec2> poly(c.idx.size());
            for (size_t i = 0; i < c.idx.size(); ++i) poly[i] = f.markers[c.idx[i]].x;
            if (is_simple(poly, c.closed)) continue;
            any_tangled = true;
            // winding probes need a closed curve; open chains drop loops directly
            if (!c.closed || !winding_cut_pass(f, c.idx, c.closed))
                loop_drop_pass(f, c.idx, c.closed);
        }
        if (!any_tangled) break;
    }
    return f;
}

namespace {

Vec2 richards_velocity(const EllipseParams& e, const Vec2& ds, double sign) {
    const double st = std::sin(e.theta);
    const double ct = std::cos(e.theta);
    const double a2 = e.a * e.a;
    const double b2 = e.b * e.b;
    const double A = ds.x * st + ds.y * ct;
    const double B = ds.x * ct - ds.y * st;
    const double den = std::sqrt(a2 * A * A + b2 * B * B);
    if (!(den > 0.0))
        throw Error(ErrorCode::DegenerateSpacing, "degenerate tangent in richards_step");
    return {sign * (a2 * ct * A - b2 * st * B) / den + e.wx,
            sign * (-a2 * st * A - b2 * ct * B) / den + e.wy};
}

} // namespace

Front richards_step(const MediumField& m, const Front& front, double dt) {
    Front f = front;
    const double sign = front.orientation == Orientation::CCW ? 1.0 : -1.0;
    const double flip = front.inward ? -1.0 : 1.0;

    for (const Chain& c : active_chains(f)) {
        const int k = static_cast<int>(c.idx.size());
        if (k < 3) continue;
        std::vector<Vec2> pts(k);
        for (int i = 0; i < k; ++i) pts[i] = f.markers[c.idx[i]].x;

        auto velocity = [&](double t, const std::vector<Vec2>& p, int i) {
            const EllipseParams e = m.ellipse_at(t, p[i]);
            const ZermeloData z = zermelo_from_ellipse(e);
            if (classify_wind(z).tag != WindRegimeTag::Mild)
                throw Error(ErrorCode::StrongWindUnsupported,
                            "richards_step requires mild wind along the front");
            return richards_velocity(e, ring_tangent(p, i, c.closed), sign * flip);
        };

        std::vector<Vec2> mid(k), out(k);
        for (int i = 0; i < k; ++i) mid[i] = pts[i] + velocity(front.t, pts, i) * (dt / 2.0);
        for (int i = 0; i < k; ++i) {
            const Vec2 v = velocity(front.t + dt / 2.0, mid, i);
            out[i] = pts[i] + v * dt;
            f.markers[c.idx[i]].xdot = v;
        }
        for (int i = 0; i < k; ++i) {
            FrontMarker& mk = f.markers[c.idx[i]];
            if (!m.domain().contains(out[i]))
                mk.status = MarkerStatus::LeftDomain;
            else
                mk.x = out[i];
        }
    }
    f.t = front.t + dt;
    return f;
}

namespace {

double active_spacing_ratio(const Front& f) {
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (const Chain& c : active_chains(f)) {
        const int k = static_cast<int>(c.idx.size());
        if (k < 2) continue;
        const int segs = c.closed ? k : k - 1;
        for (int i = 0; i < segs; ++i) {
            const double d =
                dist(f.markers[c.idx[i]].x, f.markers[c.idx[(i + 1) % k]].x);
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
    }
    return dmax > 0.0 && std::isfinite(dmin) && dmin > 0.0
               ? dmax / dmin
               : 1.0;
}

// Rebuild the active chains with uniform arclength spacing; velocities are
// re-seeded from the local unit normal (the wavemap velocity is exactly the
// F-unit normal of the front) and lineage is interpolated.
void resample_front(const MediumField& m, Front& f, int target) {
    std::vector<Chain> chains = active_chains(f);
    if (chains.empty()) return;

    double total_len = 0.0;
    std::vector<double> lens(chains.size());
    for (size_t ci = 0; ci < chains.size(); ++ci) {
        std::vector<Vec2> pts(chains[ci].idx.size());
        for (size_t i = 0; i < pts.size(); ++i) pts[i] = f.markers[chains[ci].idx[i]].x;
        lens[ci] = polyline_length(pts, chains[ci].closed);
        total_len += lens[ci];
    }
    if (!(total_len > 0.0)) return;

    std::vector<FrontMarker> rebuilt;
    rebuilt.reserve(target + 8);

    auto emit_chain = [&](const Chain& c, int count) {
        const int k = static_cast<int>(c.idx.size());
        std::vector<Vec2> pts(k);
        std::vector<double> lin(k);
        for (int i = 0; i < k; ++i) {
            pts[i] = f.markers[c.idx[i]].x;
            lin[i] = f.markers[c.idx[i]].lineage_s;
        }
        std::vector<double> cum(1, 0.0);
        const int segs = c.closed ? k : k - 1;
        for (int i = 0; i < segs; ++i) cum.push_back(cum.back() + dist(pts[i], pts[(i + 1) % k]));

        const std::vector<Vec2> np = resample_by_arclength(pts, c.closed, count);
        const double step = c.closed ? cum.back() / count : cum.back() / (count - 1);
        for (int i = 0; i < static_cast<int>(np.size()); ++i) {
            const double s = std::min(step * i, cum.back());
            const size_t seg =
                std::min(static_cast<size_t>(std::upper_bound(cum.begin(), cum.end(), s) -
                                             cum.begin()) -
                             1,
                         cum.size() - 2);
            const double seg_len = cum[seg + 1] - cum[seg];
            const double u = seg_len > 0.0 ? (s - cum[seg]) / seg_len : 0.0;

            FrontMarker mk;
            mk.x = np[i];
            mk.lineage_s = lerp_lineage(lin[seg % k], lin[(seg + 1) % k], u);
            mk.status = MarkerStatus::Active;
            const Vec2 tangent = ring_tangent(np, i, c.closed);
            const ZermeloData z = m.zermelo(f.t, mk.x);
            mk.xdot = unit_normal(z, tangent, outward_dir(tangent, f.orientation, f.inward));
            classify_strong_marker(m, f.t, mk);
            rebuilt.push_back(mk);
        }
    };

    // non-active markers are dropped except Extinct ones, which delimit chains
    size_t next_chain = 0;
    if (f.all_active()) {
        emit_chain(chains[0], std::max(8, target));
    } else {
        const int n = static_cast<int>(f.markers.size());
        int anchor = 0;
        while (f.markers[anchor].status == MarkerStatus::Active) ++anchor;
        for (int k = 0; k < n; ++k) {
            const int i = (anchor + k) % n;
            const FrontMarker& mk = f.markers[i];
            if (mk.status == MarkerStatus::Active) continue;
            if (mk.status == MarkerStatus::Extinct) rebuilt.push_back(mk);
            if (next_chain < chains.size() && !chains[next_chain].idx.empty() &&
                chains[next_chain].idx.front() == (i + 1) % n) {
                const int count = std::max(
                    3, static_cast<int>(std::lround(target * lens[next_chain] / total_len)));
                emit_chain(chains[next_chain], count);
                ++next_chain;
            }
        }
    }
    for (size_t i = 0; i < rebuilt.size(); ++i) rebuilt[i].s_index = static_cast<int>(i);
    f.markers = std::move(rebuilt);
}

struct EmitHooks {
    PropagateDiagnostics* diag;
    const MediumField* m;
    bool allow_extinction = true;
};

// detect -> untangle -> record -> (resample for the continuing front)
Front emit_pipeline(Front& work, const PropagateOptions& opts, const EmitHooks& hooks,
                    size_t* prev_chain_count) {
    if (hooks.allow_extinction) {
        ExtinctionResult ex = detect_extinction(*hooks.m, work);
        work = std::move(ex.front);
    }
    const Front untangled = untangle_front(work);
    bool cut_any = false;
    for (size_t i = 0; i < untangled.markers.size(); ++i)
        if (untangled.markers[i].status == MarkerStatus::Cut &&
            work.markers[i].status != MarkerStatus::Cut)
            cut_any = true;
    work = untangled;
    if (cut_any && hooks.diag)
        hooks.diag->first_cut_time = std::min(hooks.diag->first_cut_time, work.t);

    const std::vector<Chain> chains = active_chains(work);
    if (hooks.diag && *prev_chain_count != 0 && chains.size() != *prev_chain_count)
        ++hooks.diag->topology_changes;
    *prev_chain_count = chains.size();

    // orthogonality diagnostic over active chains, unit tangents; skip the
    // two markers next to each open end, where the conservation law does not
    // apply (cut/extinction boundaries)
    if (hooks.diag) {
        for (const Chain& c : chains) {
            const int k = static_cast<int>(c.idx.size());
            if (k < 3) continue;
            std::vector<Vec2> pts(k);
            for (int i = 0; i < k; ++i) pts[i] = work.markers[c.idx[i]].x;
            for (int i = 0; i < k; ++i) {
                if (!c.closed && (i < 2 || i >= k - 2)) continue;
                Vec2 tg = ring_tangent(pts, i, c.closed);
                const double tn = norm(tg);
                if (!(tn > 0.0)) continue;
                tg = tg / tn;
                const FrontMarker& mk = work.markers[c.idx[i]];
                try {
                    const double r = orthogonality_residual(
                        hooks.m->zermelo(work.t, mk.x), mk.xdot, tg);
                    hooks.diag->max_ortho_residual =
                        std::max(hooks.diag->max_ortho_residual, std::abs(r));
                } catch (const Error&) {
                    // markers grazing the cone boundary are skipped here
                }
            }
        }
    }

    Front emitted = work;
    bool need_resample = cut_any || active_spacing_ratio(work) > opts.resample_ratio;
    if (opts.resample && need_resample) {
        int target = opts.target_markers;
        if (target <= 0) target = static_cast<int>(work.markers.size());
        resample_front(*hooks.m, work, target);
    }
    return emitted;
}

PropagateResult propagate_common(const MediumField& m, const Front& front0,
                                 const std::vector<double>& output_times,
                                 const PropagateOptions& opts, bool richards) {
    PropagateResult res;
    Front work = front0;
    EmitHooks hooks{&res.diag, &m, !richards};
    size_t chain_count = 0;

    res.fronts.push_back(emit_pipeline(work, opts, hooks, &chain_count));

    const double t0 = front0.t;
    double t_prev = t0;
    long step_index = 0;
    for (double t_out : output_times) {
        if (t_out <= t_prev + 1e-15) continue;
        const long n_steps = std::lround((t_out - t0) / opts.dt);
        for (; step_index < n_steps; ++step_index) {
            const double t = t0 + static_cast<double>(step_index) * opts.dt;
            if (richards) {
                work = richards_step(m, work, opts.dt);
            } else {
                IntegrateOptions iopts;
                iopts.route = opts.route;
                iopts.renormalize = false; // projection applied after drift is measured
                iopts.cone_margin = opts.cone_margin;
                for (FrontMarker& mk : work.markers) {
                    if (mk.status != MarkerStatus::Active) continue;
                    GeodesicState s{mk.x, mk.xdot};
                    const StopStatus st = geodesic_step(m, t, opts.dt, s, iopts);
                    if (st == StopStatus::ConeBoundary) {
                        mk.status = MarkerStatus::Extinct;
                        ++res.diag.markers_extinct;
                        continue;
                    }
                    if (st == StopStatus::DomainEdge) {
                        mk.status = MarkerStatus::LeftDomain;
                        ++res.diag.markers_left_domain;
                        continue;
                    }
                    const ConicEval e = finsler_eval(m.zermelo(t + opts.dt, s.x), s.xdot);
                    if (e.F) {
                        res.diag.max_unit_drift =
                            std::max(res.diag.max_unit_drift, std::abs(*e.F - 1.0));
                        if (opts.renormalize) s.xdot = s.xdot / *e.F;
                    }
                    mk.x = s.x;
                    mk.xdot = s.xdot;
                }
                work.t = t + opts.dt;
            }
        }
        res.fronts.push_back(emit_pipeline(work, opts, hooks, &chain_count));
        t_prev = t_out;
    }
    return res;
}

} // namespace

PropagateResult propagate_front_ode(const MediumField& m, const Front& front0,
                                    const std::vector<double>& output_times,
                                    const PropagateOptions& opts) {
    return propagate_common(m, front0, output_times, opts, false);
}

PropagateResult propagate_front_richards(const MediumField& m, const Front& front0,
                                         const std::vector<double>& output_times,
                                         const PropagateOptions& opts) {
    return propagate_common(m, front0, output_times, opts, true);
}

double burned_area(const std::vector<Front>& fronts, const std::vector<Vec2>* b0_polygon,
                   double cell) {
    if (fronts.empty()) return 0.0;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto extend = [&](const Vec2& p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    };
    for (const Front& f : fronts)
        for (const FrontMarker& mk : f.markers) extend(mk.x);
    if (b0_polygon)
        for (const Vec2& p : *b0_polygon) extend(p);
    if (!(xmax > xmin) || !(ymax > ymin)) return 0.0;

    const double pad = 2.0 * cell;
    const Vec2 origin{xmin - pad, ymin - pad};
    const int nx = static_cast<int>(std::ceil((xmax - xmin + 2 * pad) / cell)) + 1;
    const int ny = static_cast<int>(std::ceil((ymax - ymin + 2 * pad) / cell)) + 1;
    RasterMask mask(origin, cell, nx, ny);

    if (b0_polygon) mask.fill_polygon(*b0_polygon);

    for (size_t fi = 0; fi < fronts.size(); ++fi) {
        const Front& f = fronts[fi];
        const std::vector<Chain> chains = active_chains(f);
        for (const Chain& c : chains) {
            if (c.closed) {
                std::vector<Vec2> poly(c.idx.size());
                for (size_t i = 0; i < c.idx.size(); ++i) poly[i] = f.markers[c.idx[i]].x;
                mask.fill_polygon(poly);
            }
        }
        if (fi == 0) continue;
        // swept bands between consecutive fronts for open chains
        const Front& prev = fronts[fi - 1];
        const std::vector<Chain> prev_chains = active_chains(prev);
        auto chain_lineage = [](const Front& fr, const Chain& c) {
            double acc = 0.0;
            for (int i : c.idx) acc += fr.markers[i].lineage_s;
            return c.idx.empty() ? 0.0 : acc / static_cast<double>(c.idx.size());
        };
        for (const Chain& c : chains) {
            if (c.closed || c.idx.size() < 2) continue;
            // nearest previous chain by mean lineage
            const Chain* best = nullptr;
            double best_d = 1e300;
            const double lc = chain_lineage(f, c);
            for (const Chain& pc : prev_chains) {
                if (pc.idx.size() < 2) continue;
                double d = std::abs(chain_lineage(prev, pc) - lc);
                d = std::min(d, 1.0 - d);
                if (d < best_d) {
                    best_d = d;
                    best = &pc;
                }
            }
            if (!best) continue;
            std::vector<Vec2> band;
            for (int i : best->idx) band.push_back(prev.markers[i].x);
            for (auto it = c.idx.rbegin(); it != c.idx.rend(); ++it)
                band.push_back(f.markers[*it].x);
            mask.fill_polygon(band);
        }
    }
    return mask.covered_area();
}

} // namespace conewave
