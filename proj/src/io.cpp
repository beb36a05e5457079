#include "conewave/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace conewave {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // round-trip is preserved by %.17g; trim to %g when exact
    double parsed;
    char shorter[32];
    std::snprintf(shorter, sizeof(shorter), "%g", v);
    std::sscanf(shorter, "%lf", &parsed);
    return parsed == v ? shorter : buf;
}

std::string fronts_to_csv(const std::vector<Front>& fronts) {
    std::ostringstream os;
    for (const Front& f : fronts) {
        os << "front," << format_double(f.t) << "," << f.markers.size() << "\n";
        for (const FrontMarker& mk : f.markers) {
            os << mk.s_index << "," << format_double(mk.x.x) << "," << format_double(mk.x.y)
               << "," << format_double(mk.xdot.x) << "," << format_double(mk.xdot.y) << ","
               << marker_status_name(mk.status) << "," << format_double(mk.lineage_s) << "\n";
        }
    }
    return os.str();
}

std::string contours_to_csv(const std::vector<Polyline>& contours, double t) {
    std::ostringstream os;
    for (const Polyline& c : contours) {
        os << "contour," << format_double(t) << "," << c.pts.size() << ","
           << (c.closed ? "closed" : "open") << "\n";
        for (size_t i = 0; i < c.pts.size(); ++i)
            os << i << "," << format_double(c.pts[i].x) << "," << format_double(c.pts[i].y)
               << ",0,0,active,0\n";
    }
    return os.str();
}

std::string arrival_grid_to_text(const ArrivalGrid& g) {
    std::ostringstream os;
    os << "arrival_grid\n";
    os << "origin " << format_double(g.origin.x) << " " << format_double(g.origin.y) << "\n";
    os << "spacing " << format_double(g.spacing) << "\n";
    os << "dims " << g.nx << " " << g.ny << "\n";
    os << "tmax " << format_double(g.t_max) << "\n";
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            if (ix) os << " ";
            const double a = g.at(ix, iy);
            os << (std::isfinite(a) ? format_double(a) : std::string("inf"));
        }
        os << "\n";
    }
    return os.str();
}

ArrivalGrid arrival_grid_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string token;
    ArrivalGrid g;
    is >> token;
    if (token != "arrival_grid")
        throw ParseError("expected 'arrival_grid' header", 1, 1);
    is >> token >> g.origin.x >> g.origin.y; // origin
    is >> token >> g.spacing;                // spacing
    is >> token >> g.nx >> g.ny;             // dims
    is >> token >> g.t_max;                  // tmax
    g.arrival.reserve(static_cast<size_t>(g.nx) * g.ny);
    for (long i = 0; i < static_cast<long>(g.nx) * g.ny; ++i) {
        is >> token;
        g.arrival.push_back(token == "inf" ? std::numeric_limits<double>::infinity()
                                           : std::stod(token));
    }
    return g;
}

std::string fronts_to_geojson(const std::vector<Front>& fronts) {
    std::ostringstream os;
    os << "{\"type\":\"FeatureCollection\",\"features\":[";
    bool first = true;
    for (const Front& f : fronts) {
        for (const Chain& c : active_chains(f)) {
            if (c.idx.size() < 2) continue;
            if (!first) os << ",";
            first = false;
            os << "{\"type\":\"Feature\",\"properties\":{\"t\":" << format_double(f.t)
               << "},\"geometry\":{\"type\":\"LineString\",\"coordinates\":[";
            for (size_t i = 0; i < c.idx.size(); ++i) {
                const Vec2& p = f.markers[c.idx[i]].x;
                if (i) os << ",";
                os << "[" << format_double(p.x) << "," << format_double(p.y) << "]";
            }
            if (c.closed) {
                const Vec2& p = f.markers[c.idx[0]].x;
                os << ",[" << format_double(p.x) << "," << format_double(p.y) << "]";
            }
            os << "]}}";
        }
    }
    os << "]}";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::ValidationError, "cannot open output file: " + path);
    out << content;
}

} // namespace conewave
