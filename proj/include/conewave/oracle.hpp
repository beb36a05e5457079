#pragma once

#include "conewave/front.hpp"

namespace conewave {

// First-arrival times from the initial front on a regular grid; +inf marks
// cells unreached within t_max (or at all, upwind under strong wind).
struct ArrivalGrid {
    Vec2 origin;
    double spacing = 0.0;
    int nx = 0, ny = 0;
    double t_max = 0.0;
    std::vector<double> arrival;
    bool coarse_warning = false; // spacing large vs. the velocity ovals

    double at(int ix, int iy) const { return arrival[static_cast<size_t>(iy) * nx + ix]; }
    Vec2 pos(int ix, int iy) const {
        return {origin.x + ix * spacing, origin.y + iy * spacing};
    }
    // Bilinear interpolation; +inf when any corner is unreached.
    double interp(const Vec2& p) const;
};

struct GridSpec {
    Vec2 origin;
    double spacing = 0.01;
    int nx = 0, ny = 0;
    // Neighborhood rank: 2 gives the default 16-neighbor stencil (axis,
    // diagonal and knight moves); larger ranks reduce the angular
    // discretization floor, which matters near strong-wind cone boundaries.
    int stencil_rank = 2;
};

GridSpec grid_spec_for_domain(const Domain& d, double spacing, int stencil_rank = 2);

// Label-correcting Dijkstra.  Edge traversal time is F(d) at the edge
// midpoint, evaluated at the tentative departure time with one fixed-point
// refinement for time dependence; edges whose displacement leaves the
// admissible cone are skipped.  OutwardOnly seeds fill the initial polygon
// with zero, and front vertices seed their surrounding grid corners with the
// exact short-edge traversal time.
ArrivalGrid first_arrival(const MediumField& m, const InitialFront& f0, const GridSpec& spec,
                          double t_max);

// Marching-squares iso-contour of the arrival field at the given time.
// Squares touching unreached corners are skipped.
std::vector<Polyline> iso_contour(const ArrivalGrid& grid, double level);

struct FrontCompare {
    double hausdorff = 0.0;
    double signed_max = 0.0; // positive: front outside the iso-contour
};

// Compares the front's active polyline against the {arrival = front.t}
// contour.  Throws EmptyContour when the level set is empty.
FrontCompare compare_front(const Front& front, const ArrivalGrid& grid);

// Area of {arrival <= level}, counted by cells.
double reachable_area(const ArrivalGrid& grid, double level);

} // namespace conewave
