#include "conewave/runner.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace conewave {

using nlohmann::ordered_json;

Scenario apply_overrides(Scenario s, const Overrides& o) {
    if (o.dt) s.solver.dt = *o.dt;
    if (o.route) s.solver.route = *o.route;
    if (o.markers) s.solver.marker_count = *o.markers;
    return s;
}

namespace {

Polyline chain_polyline(const Front& f, const Chain& c) {
    Polyline p;
    p.closed = c.closed;
    p.pts.reserve(c.idx.size());
    for (int i : c.idx) p.pts.push_back(f.markers[i].x);
    return p;
}

double fronts_hausdorff(const Front& a, const Front& b) {
    const std::vector<Chain> ca = active_chains(a);
    const std::vector<Chain> cb = active_chains(b);
    double worst = 0.0;
    for (const Chain& c : ca) {
        const Polyline pa = chain_polyline(a, c);
        double best_for_chain = std::numeric_limits<double>::infinity();
        for (const Chain& d : cb) {
            const Polyline pb = chain_polyline(b, d);
            best_for_chain = std::min(best_for_chain, hausdorff(pa, pb));
        }
        if (std::isfinite(best_for_chain)) worst = std::max(worst, best_for_chain);
    }
    return worst;
}

void write_front_outputs(const std::string& out_dir, const std::string& stem,
                         const PropagateResult& res, bool geojson) {
    if (out_dir.empty()) return;
    write_file(out_dir + "/" + stem + ".csv", fronts_to_csv(res.fronts));
    if (geojson) write_file(out_dir + "/" + stem + ".geojson", fronts_to_geojson(res.fronts));
    ordered_json diag;
    diag["firstCutTime"] = std::isfinite(res.diag.first_cut_time)
                               ? ordered_json(res.diag.first_cut_time)
                               : ordered_json(nullptr);
    diag["topologyChanges"] = res.diag.topology_changes;
    diag["maxUnitDrift"] = res.diag.max_unit_drift;
    diag["maxOrthoResidual"] = res.diag.max_ortho_residual;
    diag["markersLeftDomain"] = res.diag.markers_left_domain;
    diag["markersExtinct"] = res.diag.markers_extinct;
    write_file(out_dir + "/" + stem + "_diagnostics.json", diag.dump(2) + "\n");
}

} // namespace

namespace {

void require_survivors(const PropagateResult& res) {
    for (const FrontMarker& mk : res.fronts.back().markers)
        if (mk.status == MarkerStatus::Active) return;
    throw Error(ErrorCode::DomainEdge,
                "no active markers remain: the front left the domain or went extinct");
}

} // namespace

PropagateResult run_propagate(const Scenario& sc, const std::string& out_dir, bool geojson) {
    const MediumField m = build_medium(sc);
    const std::vector<Front> seeds = seed_front(m, build_initial_front(sc));
    PropagateResult res =
        propagate_front_ode(m, seeds[0], sc.solver.output_times, propagate_options(sc));
    if (seeds.size() > 1) {
        PropagateResult inner =
            propagate_front_ode(m, seeds[1], sc.solver.output_times, propagate_options(sc));
        write_front_outputs(out_dir, "fronts_inward", inner, geojson);
    }
    write_front_outputs(out_dir, "fronts", res, geojson);
    require_survivors(res);
    return res;
}

PropagateResult run_richards(const Scenario& sc, const std::string& out_dir, bool geojson) {
    const MediumField m = build_medium(sc);
    const std::vector<Front> seeds = seed_front(m, build_initial_front(sc));
    PropagateResult res =
        propagate_front_richards(m, seeds[0], sc.solver.output_times, propagate_options(sc));
    write_front_outputs(out_dir, "fronts_richards", res, geojson);
    require_survivors(res);
    return res;
}

ArrivalGrid run_oracle(const Scenario& sc, const std::string& out_dir) {
    const MediumField m = build_medium(sc);
    const InitialFront f0 = build_initial_front(sc);
    const GridSpec spec =
        grid_spec_for_domain(sc.domain, sc.oracle.spacing, sc.oracle.stencil_rank);
    // horizon margin keeps a finite band beyond the last front so that level
    // sets at t_end are extractable
    const double t_max = 1.02 * sc.domain.t_end + 20.0 * sc.oracle.spacing;
    const ArrivalGrid grid = first_arrival(m, f0, spec, t_max);
    if (!out_dir.empty()) {
        write_file(out_dir + "/arrival.txt", arrival_grid_to_text(grid));
        std::ostringstream contours;
        for (double t : sc.solver.output_times)
            contours << contours_to_csv(iso_contour(grid, t), t);
        write_file(out_dir + "/contours.csv", contours.str());
    }
    return grid;
}

std::string run_compare(const Scenario& sc, const std::string& out_dir) {
    const MediumField m = build_medium(sc);
    ordered_json report;
    report["scenario"] = sc.name;

    PropagateResult ode = run_propagate(sc, "");
    bool richards_ok = true;
    PropagateResult pde;
    try {
        pde = run_richards(sc, "");
    } catch (const Error& e) {
        richards_ok = false;
        report["richards"]["skipped"] = e.what();
    }
    if (richards_ok) {
        ordered_json per_time = ordered_json::array();
        for (size_t i = 1; i < ode.fronts.size() && i < pde.fronts.size(); ++i) {
            per_time.push_back({{"t", ode.fronts[i].t},
                                {"hausdorff", fronts_hausdorff(ode.fronts[i], pde.fronts[i])}});
        }
        report["richards"]["hausdorffPerTime"] = per_time;
    }

    if (sc.oracle.enabled) {
        const ArrivalGrid grid = run_oracle(sc, "");
        const Front& last = ode.fronts.back();
        try {
            const FrontCompare fc = compare_front(last, grid);
            report["oracle"]["hausdorff"] = fc.hausdorff;
            report["oracle"]["signedMax"] = fc.signed_max;
        } catch (const Error& e) {
            report["oracle"]["error"] = e.what();
        }
        report["oracle"]["spacing"] = sc.oracle.spacing;
        const InitialFront f0 = build_initial_front(sc);
        const double sweep = burned_area(
            ode.fronts, sc.front.mode == FrontMode::OutwardOnly ? &f0.ring : nullptr,
            sc.oracle.spacing);
        const double reach = reachable_area(grid, last.t);
        report["burnedArea"]["frontSweep"] = sweep;
        report["burnedArea"]["oracleReachable"] = reach;
        if (reach > 0.0) report["burnedArea"]["relativeGap"] = std::abs(sweep - reach) / reach;
    }

    const std::string text = report.dump(2) + "\n";
    if (!out_dir.empty()) write_file(out_dir + "/compare.json", text);
    return text;
}

std::string run_extinction(const Scenario& sc, const std::string& out_dir) {
    const MediumField m = build_medium(sc);
    const std::vector<Front> seeds = seed_front(m, build_initial_front(sc));
    const ExtinctionResult ex = detect_extinction(m, seeds[0]);

    ordered_json report;
    report["scenario"] = sc.name;
    report["count"] = ex.points.size();
    ordered_json pts = ordered_json::array();
    for (const ExtinctionPoint& p : ex.points)
        pts.push_back({{"s", p.lineage_s}, {"x", p.x.x}, {"y", p.x.y}});
    report["points"] = pts;
    int extinct = 0, active = 0;
    for (const FrontMarker& mk : ex.front.markers) {
        extinct += mk.status == MarkerStatus::Extinct;
        active += mk.status == MarkerStatus::Active;
    }
    report["markersExtinct"] = extinct;
    report["markersActive"] = active;

    const std::string text = report.dump(2) + "\n";
    if (!out_dir.empty()) write_file(out_dir + "/extinction.json", text);
    return text;
}

namespace {

struct CheckLog {
    std::ostream& os;
    bool all_pass = true;
    void result(const std::string& name, bool pass, const std::string& detail) {
        os << (pass ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
        all_pass = all_pass && pass;
    }
    void skip(const std::string& name, const std::string& why) {
        os << "SKIP " << name << " (" << why << ")\n";
    }
};

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << std::scientific << v;
    return os.str();
}

// Random F-unit direction at (t, p); empty when the cone is too tight.
std::optional<Vec2> random_unit_direction(const MediumField& m, double t, const Vec2& p,
                                          std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const ZermeloData z = m.zermelo(t, p);
    for (int tries = 0; tries < 64; ++tries) {
        const double phi = angle(rng);
        const Vec2 v{std::cos(phi), std::sin(phi)};
        const ConicEval e = finsler_eval(z, v);
        if (!e.in_domain || !e.F) continue;
        if (e.F_l && (*e.F_l - *e.F) / *e.F < 1e-3) continue; // too close to the cone edge
        return v / *e.F;
    }
    return std::nullopt;
}

} // namespace

bool run_check(const Scenario& sc, std::ostream& log) {
    CheckLog ck{log};
    const MediumField m = build_medium(sc);
    const InitialFront f0 = build_initial_front(sc);
    const std::vector<Front> seeds = seed_front(m, f0);
    const Front& seed = seeds[0];

    // seed normals: F-unit and F-orthogonal to the ring tangent
    {
        double worst_f = 0.0, worst_r = 0.0;
        const int n = static_cast<int>(seed.markers.size());
        for (int i = 0; i < n; ++i) {
            const FrontMarker& mk = seed.markers[i];
            if (mk.status != MarkerStatus::Active) continue;
            const ZermeloData z = m.zermelo(0.0, mk.x);
            const ConicEval e = finsler_eval(z, mk.xdot);
            const double fval = e.F ? *e.F : (e.F_l ? *e.F_l : 0.0);
            worst_f = std::max(worst_f, std::abs(fval - 1.0));
            Vec2 tg = seed.markers[(i + 1) % n].x - seed.markers[(i - 1 + n) % n].x;
            const double tn = norm(tg);
            if (tn > 0.0) {
                try {
                    worst_r = std::max(
                        worst_r, std::abs(orthogonality_residual(z, mk.xdot, tg / tn)));
                } catch (const Error&) {
                }
            }
        }
        ck.result("seed-unit-speed", worst_f <= sc.check.unit_speed,
                  num(worst_f) + " <= " + num(sc.check.unit_speed));
        ck.result("seed-orthogonality", worst_r <= sc.check.seed_residual,
                  num(worst_r) + " <= " + num(sc.check.seed_residual));
    }

    // time-reparametrization identity: the k=0 geodesic component vanishes
    {
        std::mt19937 rng(20240915u);
        const Domain& d = sc.domain;
        std::uniform_real_distribution<double> ux(d.xmin + 0.05 * (d.xmax - d.xmin),
                                                  d.xmax - 0.05 * (d.xmax - d.xmin));
        std::uniform_real_distribution<double> uy(d.ymin + 0.05 * (d.ymax - d.ymin),
                                                  d.ymax - 0.05 * (d.ymax - d.ymin));
        std::uniform_real_distribution<double> ut(0.0, d.t_end);
        double worst = 0.0;
        int done = 0;
        for (int i = 0; i < sc.check.k0_samples * 4 && done < sc.check.k0_samples; ++i) {
            const double t = ut(rng);
            const Vec2 p{ux(rng), uy(rng)};
            const auto v = random_unit_direction(m, t, p, rng);
            if (!v) continue;
            for (Route route : {Route::FormalG, Route::LorentzRanders}) {
                const std::array<double, 3> r = geodesic_rhs3(m, t, {p, *v}, route);
                worst = std::max(worst, std::abs(r[0]));
            }
            ++done;
        }
        ck.result("k0-identity", done > 0 && worst <= sc.check.k0_identity,
                  num(worst) + " <= " + num(sc.check.k0_identity) + ", samples " +
                      std::to_string(done));
    }

    // propagate once with the scenario solver settings
    const PropagateResult ode =
        propagate_front_ode(m, seed, sc.solver.output_times, propagate_options(sc));

    ck.result("orthogonality-conservation",
              ode.diag.max_ortho_residual <= sc.check.ortho_residual,
              num(ode.diag.max_ortho_residual) + " <= " + num(sc.check.ortho_residual));

    // lightlike conservation without the projection
    {
        PropagateOptions o = propagate_options(sc);
        o.renormalize = false;
        o.resample = false;
        const double horizon = std::min(sc.solver.output_times.back(), 0.5);
        const PropagateResult raw = propagate_front_ode(m, seed, {horizon}, o);
        ck.result("lightlike-drift", raw.diag.max_unit_drift <= 1e-6,
                  num(raw.diag.max_unit_drift) + " <= 1e-06 over t<=" + num(horizon));
    }

    // the two geodesic routes agree on sampled markers
    {
        std::vector<const FrontMarker*> picks;
        const int n = static_cast<int>(seed.markers.size());
        for (int i = 0; i < n && static_cast<int>(picks.size()) < sc.check.route_samples;
             i += std::max(1, n / sc.check.route_samples))
            if (seed.markers[i].status == MarkerStatus::Active) picks.push_back(&seed.markers[i]);
        double worst = 0.0;
        int used = 0;
        for (const FrontMarker* mk : picks) {
            IntegrateOptions io;
            io.renormalize = false;
            io.route = Route::FormalG;
            Trajectory a, b;
            try {
                a = integrate_geodesic(m, 0.0, {mk->x, mk->xdot},
                                       std::min(1.0, sc.solver.output_times.back()),
                                       sc.solver.dt, io);
                io.route = Route::LorentzRanders;
                b = integrate_geodesic(m, 0.0, {mk->x, mk->xdot},
                                       std::min(1.0, sc.solver.output_times.back()),
                                       sc.solver.dt, io);
            } catch (const Error&) {
                continue;
            }
            const size_t len = std::min(a.samples.size(), b.samples.size());
            for (size_t k = 0; k < len; ++k)
                worst = std::max(worst, dist(a.samples[k].state.x, b.samples[k].state.x));
            ++used;
        }
        ck.result("route-agreement", used > 0 && worst <= sc.check.route_agreement,
                  num(worst) + " <= " + num(sc.check.route_agreement) + ", geodesics " +
                      std::to_string(used));
    }

    if (sc.check.richards_hausdorff) {
        try {
            const PropagateResult pde =
                propagate_front_richards(m, seed, sc.solver.output_times, propagate_options(sc));
            double worst = 0.0;
            for (size_t i = 1; i < ode.fronts.size() && i < pde.fronts.size(); ++i)
                worst = std::max(worst, fronts_hausdorff(ode.fronts[i], pde.fronts[i]));
            ck.result("richards-agreement", worst <= *sc.check.richards_hausdorff,
                      num(worst) + " <= " + num(*sc.check.richards_hausdorff));
        } catch (const Error& e) {
            ck.result("richards-agreement", false, e.what());
        }
    }

    if (sc.oracle.enabled) {
        const GridSpec spec =
            grid_spec_for_domain(sc.domain, sc.oracle.spacing, sc.oracle.stencil_rank);
        const ArrivalGrid grid =
            first_arrival(m, f0, spec, 1.02 * sc.domain.t_end + 20.0 * sc.oracle.spacing);
        // every active marker sits on the arrival level set of its time;
        // markers at open-chain ends ride the cone-edge rays where the
        // stencil's angular floor peaks, so they are skipped
        double worst_arrival = 0.0;
        for (const Front& f : ode.fronts) {
            if (f.t <= 0.0) continue;
            for (const Chain& c : active_chains(f)) {
                const int k = static_cast<int>(c.idx.size());
                for (int i = 0; i < k; ++i) {
                    if (!c.closed && (i < 2 || i >= k - 2)) continue;
                    const double a = grid.interp(f.markers[c.idx[i]].x);
                    if (std::isfinite(a))
                        worst_arrival = std::max(worst_arrival, std::abs(a - f.t));
                }
            }
        }
        const double tol_mult = sc.check.oracle_hausdorff.value_or(3.0);
        // first-arrival mismatch scales with the angular floor over distance;
        // translate the spacing multiple into an arrival tolerance
        const double arrival_tol = sc.check.arrival_tolerance.value_or(
            std::max(tol_mult * sc.oracle.spacing, 0.03 * sc.solver.output_times.back()));
        ck.result("first-arrival", worst_arrival <= arrival_tol,
                  num(worst_arrival) + " <= " + num(arrival_tol));

        // nothing strictly inside a closed front may burn later than the front
        {
            int late_inside = 0;
            long tested = 0;
            for (const Front& f : ode.fronts) {
                if (f.t <= 0.0 || !f.all_active()) continue;
                const std::vector<Vec2> poly = f.active_positions();
                double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
                for (const Vec2& p : poly) {
                    xmin = std::min(xmin, p.x);
                    xmax = std::max(xmax, p.x);
                    ymin = std::min(ymin, p.y);
                    ymax = std::max(ymax, p.y);
                }
                for (int iy = 0; iy < grid.ny; iy += 2)
                    for (int ix = 0; ix < grid.nx; ix += 2) {
                        const Vec2 p = grid.pos(ix, iy);
                        if (p.x < xmin || p.x > xmax || p.y < ymin || p.y > ymax) continue;
                        if (!point_in_polygon(poly, p)) continue;
                        if (point_polyline_dist(p, {poly, true}) < arrival_tol) continue;
                        ++tested;
                        if (!(grid.at(ix, iy) <= f.t + arrival_tol)) ++late_inside;
                    }
            }
            ck.result("interior-burned", late_inside == 0,
                      std::to_string(late_inside) + " late cells of " +
                          std::to_string(tested) + " inside closed fronts");
        }
        if (sc.check.oracle_hausdorff) {
            try {
                const FrontCompare fc = compare_front(ode.fronts.back(), grid);
                const double tol = *sc.check.oracle_hausdorff * sc.oracle.spacing;
                ck.result("oracle-contour", fc.hausdorff <= tol,
                          num(fc.hausdorff) + " <= " + num(tol));
            } catch (const Error& e) {
                ck.result("oracle-contour", false, e.what());
            }
        }
    }

    if (sc.check.nested && sc.front.mode == FrontMode::OutwardOnly) {
        bool nested = true;
        for (size_t i = 0; i + 1 < ode.fronts.size() && nested; ++i) {
            const Front& inner = ode.fronts[i];
            const Front& outer = ode.fronts[i + 1];
            if (!inner.all_active() || !outer.all_active()) break;
            const std::vector<Vec2> poly = outer.active_positions();
            for (size_t k = 0; k < inner.markers.size(); k += 7) {
                const Vec2& p = inner.markers[k].x;
                if (!point_in_polygon(poly, p) &&
                    point_polyline_dist(p, {poly, true}) > 1e-9) {
                    nested = false;
                    break;
                }
            }
        }
        ck.result("monotone-nesting", nested, nested ? "fronts nested" : "violation found");
    }

    if (sc.check.min_cut_time) {
        const bool ok = ode.diag.first_cut_time >= *sc.check.min_cut_time;
        ck.result("embedding-horizon", ok,
                  "first cut at " +
                      (std::isfinite(ode.diag.first_cut_time) ? num(ode.diag.first_cut_time)
                                                              : std::string("never")) +
                      ", expected >= " + num(*sc.check.min_cut_time));
    }

    if (sc.check.expected_extinction) {
        const ExtinctionResult ex = detect_extinction(m, seed);
        const bool ok = static_cast<int>(ex.points.size()) == *sc.check.expected_extinction;
        ck.result("extinction-count", ok,
                  std::to_string(ex.points.size()) + " == " +
                      std::to_string(*sc.check.expected_extinction));
    }

    return ck.all_pass;
}

} // namespace conewave
