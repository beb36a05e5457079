#include "conewave/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

namespace conewave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::pair<int, int>> stencil_offsets(int rank) {
    std::vector<std::pair<int, int>> offs;
    for (int i = -rank; i <= rank; ++i)
        for (int j = -rank; j <= rank; ++j) {
            if (i == 0 && j == 0) continue;
            if (std::gcd(std::abs(i), std::abs(j)) != 1) continue; // primitive directions only
            offs.emplace_back(i, j);
        }
    return offs;
}

// Traversal time for displacement d departing at time t from the midpoint
// context; infinite when the direction is inadmissible.
double edge_time(const MediumField& m, double t, const Vec2& mid, const Vec2& d) {
    const ConicEval e0 = finsler_eval(m.zermelo(t, mid), d);
    if (!e0.in_domain || !e0.F) return kInf;
    const double tau0 = *e0.F;
    // one fixed-point refinement at the mid-traversal time
    const ConicEval e1 = finsler_eval(m.zermelo(t + 0.5 * tau0, mid), d);
    if (!e1.in_domain || !e1.F) return kInf;
    return *e1.F;
}

} // namespace

double ArrivalGrid::interp(const Vec2& p) const {
    const double u = (p.x - origin.x) / spacing;
    const double v = (p.y - origin.y) / spacing;
    const int ix = static_cast<int>(std::floor(u));
    const int iy = static_cast<int>(std::floor(v));
    if (ix < 0 || iy < 0 || ix + 1 >= nx || iy + 1 >= ny) return kInf;
    const double fx = u - ix, fy = v - iy;
    const double a00 = at(ix, iy), a10 = at(ix + 1, iy);
    const double a01 = at(ix, iy + 1), a11 = at(ix + 1, iy + 1);
    if (!std::isfinite(a00) || !std::isfinite(a10) || !std::isfinite(a01) || !std::isfinite(a11))
        return kInf;
    return a00 * (1 - fx) * (1 - fy) + a10 * fx * (1 - fy) + a01 * (1 - fx) * fy + a11 * fx * fy;
}

GridSpec grid_spec_for_domain(const Domain& d, double spacing, int stencil_rank) {
    GridSpec s;
    s.origin = {d.xmin, d.ymin};
    s.spacing = spacing;
    s.nx = static_cast<int>(std::floor((d.xmax - d.xmin) / spacing)) + 1;
    s.ny = static_cast<int>(std::floor((d.ymax - d.ymin) / spacing)) + 1;
    s.stencil_rank = stencil_rank;
    return s;
}

ArrivalGrid first_arrival(const MediumField& m, const InitialFront& f0, const GridSpec& spec,
                          double t_max) {
    ArrivalGrid g;
    g.origin = spec.origin;
    g.spacing = spec.spacing;
    g.nx = spec.nx;
    g.ny = spec.ny;
    g.t_max = t_max;
    g.arrival.assign(static_cast<size_t>(spec.nx) * spec.ny, kInf);

    // coarseness warning against the smallest oval axis seen on a probe grid
    {
        double min_axis = kInf;
        const Domain& d = m.domain();
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 4; ++j) {
                const EllipseParams e = m.ellipse_at(
                    0.0, {d.xmin + (d.xmax - d.xmin) * i / 4.0,
                          d.ymin + (d.ymax - d.ymin) * j / 4.0});
                min_axis = std::min(min_axis, std::min(e.a, e.b));
            }
        g.coarse_warning = spec.spacing > 0.5 * min_axis;
    }

    using QItem = std::pair<double, int>;
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> heap;
    auto node = [&](int ix, int iy) { return iy * spec.nx + ix; };

    auto seed = [&](int ix, int iy, double t) {
        if (ix < 0 || iy < 0 || ix >= spec.nx || iy >= spec.ny) return;
        const int id = node(ix, iy);
        if (t < g.arrival[id]) {
            g.arrival[id] = t;
            heap.emplace(t, id);
        }
    };

    // seed the interior of B0 at zero (wildfire mode)
    if (f0.mode == FrontMode::OutwardOnly) {
        for (int iy = 0; iy < spec.ny; ++iy)
            for (int ix = 0; ix < spec.nx; ++ix)
                if (point_in_polygon(f0.ring, g.pos(ix, iy))) seed(ix, iy, 0.0);
    }

    // seed the grid corners around every front vertex with the exact
    // short-edge time, removing the O(spacing) snap error
    for (const Vec2& v : f0.ring) {
        const int ix = static_cast<int>(std::floor((v.x - g.origin.x) / g.spacing));
        const int iy = static_cast<int>(std::floor((v.y - g.origin.y) / g.spacing));
        for (int dy = 0; dy <= 1; ++dy)
            for (int dx = 0; dx <= 1; ++dx) {
                const int jx = ix + dx, jy = iy + dy;
                if (jx < 0 || jy < 0 || jx >= spec.nx || jy >= spec.ny) continue;
                const Vec2 d = g.pos(jx, jy) - v;
                if (norm(d) < 1e-12 * g.spacing) {
                    seed(jx, jy, 0.0);
                    continue;
                }
                const double tau = edge_time(m, 0.0, v + d * 0.5, d);
                if (std::isfinite(tau) && tau <= t_max) seed(jx, jy, tau);
            }
    }

    const std::vector<std::pair<int, int>> offs = stencil_offsets(spec.stencil_rank);
    double last_popped = 0.0;
    while (!heap.empty()) {
        const auto [t, id] = heap.top();
        heap.pop();
        if (t > g.arrival[id]) continue; // stale entry
        assert(t >= last_popped - 1e-12); // non-decreasing extraction order
        last_popped = t;
        const int ix = id % spec.nx;
        const int iy = id / spec.nx;
        const Vec2 p = g.pos(ix, iy);
        for (const auto& [di, dj] : offs) {
            const int jx = ix + di, jy = iy + dj;
            if (jx < 0 || jy < 0 || jx >= spec.nx || jy >= spec.ny) continue;
            const Vec2 d{di * g.spacing, dj * g.spacing};
            const double tau = edge_time(m, t, p + d * 0.5, d);
            if (!std::isfinite(tau)) continue;
            const double tn = t + tau;
            if (tn > t_max) continue;
            const int jd = node(jx, jy);
            if (tn < g.arrival[jd] - 1e-15) {
                g.arrival[jd] = tn;
                heap.emplace(tn, jd);
            }
        }
    }
    return g;
}

namespace {

// Each contour vertex lies on a unique grid edge; key it for chaining.
struct EdgeKey {
    int ix, iy;
    bool horizontal;
    bool operator<(const EdgeKey& o) const {
        if (ix != o.ix) return ix < o.ix;
        if (iy != o.iy) return iy < o.iy;
        return horizontal < o.horizontal;
    }
};

struct ContourSeg {
    EdgeKey a, b;
};

Vec2 edge_point(const ArrivalGrid& g, const EdgeKey& e, double level) {
    const double v0 = g.at(e.ix, e.iy);
    const double v1 = e.horizontal ? g.at(e.ix + 1, e.iy) : g.at(e.ix, e.iy + 1);
    double u = (level - v0) / (v1 - v0);
    u = std::clamp(u, 0.0, 1.0);
    const Vec2 p0 = g.pos(e.ix, e.iy);
    return e.horizontal ? Vec2{p0.x + u * g.spacing, p0.y} : Vec2{p0.x, p0.y + u * g.spacing};
}

} // namespace

std::vector<Polyline> iso_contour(const ArrivalGrid& grid, double level) {
    std::vector<ContourSeg> segs;
    for (int iy = 0; iy + 1 < grid.ny; ++iy)
        for (int ix = 0; ix + 1 < grid.nx; ++ix) {
            const double v00 = grid.at(ix, iy), v10 = grid.at(ix + 1, iy);
            const double v01 = grid.at(ix, iy + 1), v11 = grid.at(ix + 1, iy + 1);
            if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v01) ||
                !std::isfinite(v11))
                continue;
            int mask = 0;
            if (v00 <= level) mask |= 1;
            if (v10 <= level) mask |= 2;
            if (v11 <= level) mask |= 4;
            if (v01 <= level) mask |= 8;
            if (mask == 0 || mask == 15) continue;

            const EdgeKey bottom{ix, iy, true};
            const EdgeKey top{ix, iy + 1, true};
            const EdgeKey left{ix, iy, false};
            const EdgeKey right{ix + 1, iy, false};

            auto add = [&](EdgeKey a, EdgeKey b) { segs.push_back({a, b}); };
            switch (mask) {
                case 1: case 14: add(left, bottom); break;
                case 2: case 13: add(bottom, right); break;
                case 4: case 11: add(right, top); break;
                case 8: case 7: add(top, left); break;
                case 3: case 12: add(left, right); break;
                case 6: case 9: add(bottom, top); break;
                case 5: case 10: {
                    // ambiguous saddle: split by the cell-center value
                    const double center = 0.25 * (v00 + v10 + v01 + v11);
                    const bool center_in = center <= level;
                    if ((mask == 5) == center_in) {
                        add(left, top);
                        add(bottom, right);
                    } else {
                        add(left, bottom);
                        add(right, top);
                    }
                    break;
                }
                default: break;
            }
        }

    // chain segments into polylines via shared grid edges
    std::multimap<EdgeKey, size_t> by_edge;
    for (size_t i = 0; i < segs.size(); ++i) {
        by_edge.emplace(segs[i].a, i);
        by_edge.emplace(segs[i].b, i);
    }
    std::vector<char> used(segs.size(), 0);
    std::vector<Polyline> out;

    for (size_t start = 0; start < segs.size(); ++start) {
        if (used[start]) continue;
        used[start] = 1;
        std::vector<EdgeKey> keys{segs[start].a, segs[start].b};
        // extend forward then backward
        for (int dirpass = 0; dirpass < 2; ++dirpass) {
            for (;;) {
                const EdgeKey tail = dirpass == 0 ? keys.back() : keys.front();
                size_t next = segs.size();
                auto [lo, hi] = by_edge.equal_range(tail);
                for (auto it = lo; it != hi; ++it)
                    if (!used[it->second]) {
                        next = it->second;
                        break;
                    }
                if (next == segs.size()) break;
                used[next] = 1;
                const EdgeKey other = (segs[next].a < tail || tail < segs[next].a)
                                          ? segs[next].a
                                          : segs[next].b;
                if (dirpass == 0)
                    keys.push_back(other);
                else
                    keys.insert(keys.begin(), other);
            }
        }
        Polyline poly;
        for (const EdgeKey& k : keys) poly.pts.push_back(edge_point(grid, k, level));
        if (keys.size() > 2 && !(keys.front() < keys.back()) && !(keys.back() < keys.front())) {
            poly.pts.pop_back();
            poly.closed = true;
        }
        if (poly.pts.size() >= 2) out.push_back(std::move(poly));
    }
    return out;
}

FrontCompare compare_front(const Front& front, const ArrivalGrid& grid) {
    const std::vector<Polyline> contours = iso_contour(grid, front.t);
    if (contours.empty())
        throw Error(ErrorCode::EmptyContour, "no iso-contour at the front time");

    Polyline front_poly;
    front_poly.pts = front.active_positions();
    front_poly.closed = front.all_active();
    if (front_poly.pts.empty())
        throw Error(ErrorCode::EmptyContour, "front has no active markers");

    // largest closed contour (by |area|) carries the inside/outside sign
    const Polyline* main_loop = nullptr;
    double best_area = -1.0;
    for (const Polyline& c : contours) {
        if (!c.closed) continue;
        const double a = std::abs(signed_area(c.pts));
        if (a > best_area) {
            best_area = a;
            main_loop = &c;
        }
    }

    FrontCompare out;
    double h = 0.0;
    for (const Polyline& c : contours)
        for (const Vec2& p : c.pts) h = std::max(h, point_polyline_dist(p, front_poly));
    double signed_max = 0.0;
    for (const Vec2& p : front_poly.pts) {
        double dmin = kInf;
        for (const Polyline& c : contours) dmin = std::min(dmin, point_polyline_dist(p, c));
        h = std::max(h, dmin);
        if (main_loop) {
            const double s = point_in_polygon(main_loop->pts, p) ? -dmin : dmin;
            if (std::abs(s) > std::abs(signed_max)) signed_max = s;
        }
    }
    out.hausdorff = h;
    out.signed_max = signed_max;
    return out;
}

double reachable_area(const ArrivalGrid& grid, double level) {
    size_t count = 0;
    for (double a : grid.arrival) count += (a <= level);
    return static_cast<double>(count) * grid.spacing * grid.spacing;
}

} // namespace conewave
