#pragma once

#include <string>

#include "conewave/oracle.hpp"

namespace conewave {

// Front CSV: one block per output time,
//   front,<t>,<marker count>
//   sIndex,x,y,xdot_x,xdot_y,status,lineage_s
//   ...
std::string fronts_to_csv(const std::vector<Front>& fronts);

// Contours share the front polyline block format (velocity columns zero).
std::string contours_to_csv(const std::vector<Polyline>& contours, double t);

// Plain text: header (origin, spacing, dims, tmax) + row-major times.
std::string arrival_grid_to_text(const ArrivalGrid& g);
ArrivalGrid arrival_grid_from_text(const std::string& text);

// GeoJSON FeatureCollection of LineStrings, one feature per active chain.
std::string fronts_to_geojson(const std::vector<Front>& fronts);

void write_file(const std::string& path, const std::string& content);

// Deterministic shortest-round-trip float formatting.
std::string format_double(double v);

} // namespace conewave
