#include "conewave/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace conewave {

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= 0.0) return dist(p, a);
    const double u = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + ab * u);
}

double point_polyline_dist(const Vec2& p, const Polyline& poly) {
    const auto& v = poly.pts;
    if (v.empty()) return std::numeric_limits<double>::infinity();
    if (v.size() == 1) return dist(p, v[0]);
    double best = std::numeric_limits<double>::infinity();
    const size_t n = v.size();
    const size_t segs = poly.closed ? n : n - 1;
    for (size_t i = 0; i < segs; ++i)
        best = std::min(best, point_segment_dist(p, v[i], v[(i + 1) % n]));
    return best;
}

double directed_hausdorff(const Polyline& a, const Polyline& b) {
    double worst = 0.0;
    for (const Vec2& p : a.pts) worst = std::max(worst, point_polyline_dist(p, b));
    return worst;
}

double hausdorff(const Polyline& a, const Polyline& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

namespace {

int orient_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = cross(b - a, c - a);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

} // namespace

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const int o1 = orient_sign(a, b, c);
    const int o2 = orient_sign(a, b, d);
    const int o3 = orient_sign(c, d, a);
    const int o4 = orient_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

std::pair<int, int> first_self_intersection(const std::vector<Vec2>& pts, bool closed) {
    const int n = static_cast<int>(pts.size());
    const int segs = closed ? n : n - 1;
    for (int i = 0; i < segs; ++i) {
        for (int j = i + 2; j < segs; ++j) {
            if (closed && i == 0 && j == segs - 1) continue; // ring-adjacent
            if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]))
                return {i, j};
        }
    }
    return {-1, -1};
}

bool is_simple(const std::vector<Vec2>& pts, bool closed) {
    return first_self_intersection(pts, closed).first < 0;
}

int winding_number(const std::vector<Vec2>& poly, const Vec2& p) {
    // standard crossing-count winding number
    int wn = 0;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && orient_sign(a, b, p) > 0) ++wn;
        } else {
            if (b.y <= p.y && orient_sign(a, b, p) < 0) --wn;
        }
    }
    return wn;
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
    return winding_number(poly, p) != 0;
}

double signed_area(const std::vector<Vec2>& poly) {
    double acc = 0.0;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        acc += cross(a, b);
    }
    return 0.5 * acc;
}

double polyline_length(const std::vector<Vec2>& pts, bool closed) {
    double len = 0.0;
    const size_t n = pts.size();
    const size_t segs = closed ? n : n - 1;
    for (size_t i = 0; i < segs; ++i) len += dist(pts[i], pts[(i + 1) % n]);
    return len;
}

std::vector<Vec2> resample_by_arclength(const std::vector<Vec2>& pts, bool closed, int count) {
    const size_t n = pts.size();
    if (n < 2 || count < 2) return pts;
    std::vector<double> cum(1, 0.0);
    const size_t segs = closed ? n : n - 1;
    for (size_t i = 0; i < segs; ++i) cum.push_back(cum.back() + dist(pts[i], pts[(i + 1) % n]));
    const double total = cum.back();
    if (!(total > 0.0)) return pts;

    std::vector<Vec2> out;
    out.reserve(count);
    const double step = closed ? total / count : total / (count - 1);
    size_t seg = 0;
    for (int k = 0; k < count; ++k) {
        const double target = std::min(step * k, total);
        while (seg + 1 < cum.size() - 1 && cum[seg + 1] < target) ++seg;
        const double seg_len = cum[seg + 1] - cum[seg];
        const double u = seg_len > 0.0 ? (target - cum[seg]) / seg_len : 0.0;
        const Vec2& a = pts[seg % n];
        const Vec2& b = pts[(seg + 1) % n];
        out.push_back(a + (b - a) * u);
    }
    if (!closed) out.back() = pts.back();
    return out;
}

RasterMask::RasterMask(Vec2 origin, double cell, int nx, int ny)
    : origin_(origin), cell_(cell), nx_(nx), ny_(ny),
      mask_(static_cast<size_t>(nx) * ny, 0) {}

void RasterMask::fill_polygon(const std::vector<Vec2>& poly) {
    if (poly.size() < 3) return;
    double ymin = poly[0].y, ymax = poly[0].y;
    for (const Vec2& p : poly) {
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    int iy0 = std::max(0, static_cast<int>(std::floor((ymin - origin_.y) / cell_ - 0.5)));
    int iy1 = std::min(ny_ - 1, static_cast<int>(std::ceil((ymax - origin_.y) / cell_ - 0.5)));
    std::vector<double> xs;
    for (int iy = iy0; iy <= iy1; ++iy) {
        const double yc = origin_.y + (iy + 0.5) * cell_;
        xs.clear();
        const size_t n = poly.size();
        for (size_t i = 0; i < n; ++i) {
            const Vec2& a = poly[i];
            const Vec2& b = poly[(i + 1) % n];
            if ((a.y <= yc) == (b.y <= yc)) continue;
            xs.push_back(a.x + (b.x - a.x) * (yc - a.y) / (b.y - a.y));
        }
        std::sort(xs.begin(), xs.end());
        for (size_t k = 0; k + 1 < xs.size(); k += 2) {
            int ix0 = std::max(0, static_cast<int>(std::ceil((xs[k] - origin_.x) / cell_ - 0.5)));
            int ix1 = std::min(nx_ - 1,
                               static_cast<int>(std::floor((xs[k + 1] - origin_.x) / cell_ - 0.5)));
            for (int ix = ix0; ix <= ix1; ++ix) mask_[static_cast<size_t>(iy) * nx_ + ix] = 1;
        }
    }
}

double RasterMask::covered_area() const {
    size_t count = 0;
    for (char c : mask_) count += (c != 0);
    return static_cast<double>(count) * cell_ * cell_;
}

} // namespace conewave
