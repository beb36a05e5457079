#pragma once

#include <vector>

#include "conewave/linalg.hpp"

namespace conewave {

struct Polyline {
    std::vector<Vec2> pts;
    bool closed = false;
};

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b);
double point_polyline_dist(const Vec2& p, const Polyline& poly);

// Directed and symmetric Hausdorff distances, sampled at vertices.
double directed_hausdorff(const Polyline& a, const Polyline& b);
double hausdorff(const Polyline& a, const Polyline& b);

// Proper or touching intersection of open segments ab and cd (shared
// endpoints of adjacent ring segments must be excluded by the caller).
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

// First self-intersecting non-adjacent segment pair, or {-1,-1}.
std::pair<int, int> first_self_intersection(const std::vector<Vec2>& pts, bool closed);
bool is_simple(const std::vector<Vec2>& pts, bool closed);

// Signed winding number of a closed polygon around p (positive = CCW).
int winding_number(const std::vector<Vec2>& poly, const Vec2& p);
bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p);

// Shoelace; positive for CCW.
double signed_area(const std::vector<Vec2>& poly);

double polyline_length(const std::vector<Vec2>& pts, bool closed);

// Redistribute `count` points uniformly by arclength.  Closed inputs yield
// closed outputs (no duplicated endpoint); open inputs pin both endpoints.
std::vector<Vec2> resample_by_arclength(const std::vector<Vec2>& pts, bool closed, int count);

// Cell-center scanline rasterizer used for swept-area estimates.
class RasterMask {
public:
    RasterMask(Vec2 origin, double cell, int nx, int ny);
    void fill_polygon(const std::vector<Vec2>& poly); // even-odd rule
    double covered_area() const;
    bool covered(int ix, int iy) const { return mask_[static_cast<size_t>(iy) * nx_ + ix]; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }

private:
    Vec2 origin_;
    double cell_;
    int nx_, ny_;
    std::vector<char> mask_;
};

} // namespace conewave
