#include "conewave/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conewave/io.hpp"

namespace conewave {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail_field(const std::string& field, const std::string& why) {
    throw ValidationError(field, field + ": " + why);
}

double require_number(const ordered_json& j, const std::string& field) {
    if (!j.contains(field.substr(field.rfind('.') + 1)))
        fail_field(field, "missing");
    const auto& v = j.at(field.substr(field.rfind('.') + 1));
    if (!v.is_number()) fail_field(field, "expected a number");
    return v.get<double>();
}

Vec2 parse_vec2(const ordered_json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail_field(field, "expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

FieldSource parse_field_source(const ordered_json& v, const std::string& field) {
    if (v.is_string()) {
        const std::string src = v.get<std::string>();
        try {
            Expression probe(src); // compile now so errors carry positions
        } catch (const ParseError& e) {
            throw ParseError(field + ": " + e.what(), e.line(), e.column());
        }
        return src;
    }
    if (v.is_object() && v.contains("grid")) {
        const auto& g = v.at("grid");
        GridField gf;
        gf.x0 = require_number(g, field + ".grid.x0");
        gf.y0 = require_number(g, field + ".grid.y0");
        gf.dx = require_number(g, field + ".grid.dx");
        gf.dy = require_number(g, field + ".grid.dy");
        gf.nx = static_cast<int>(require_number(g, field + ".grid.nx"));
        gf.ny = static_cast<int>(require_number(g, field + ".grid.ny"));
        if (gf.nx < 2 || gf.ny < 2) fail_field(field + ".grid", "needs nx, ny >= 2");
        if (!g.contains("values") || !g.at("values").is_array())
            fail_field(field + ".grid.values", "missing array");
        for (const auto& x : g.at("values")) gf.values.push_back(x.get<double>());
        if (gf.values.size() != static_cast<size_t>(gf.nx) * gf.ny)
            fail_field(field + ".grid.values", "size must be nx*ny");
        return gf;
    }
    fail_field(field, "expected an expression string or a grid object");
}

FieldSpec to_field_spec(const FieldSource& src) {
    if (std::holds_alternative<std::string>(src))
        return FieldSpec::expression(Expression(std::get<std::string>(src)));
    return FieldSpec::grid(std::get<GridField>(src));
}

ordered_json field_source_to_json(const FieldSource& src) {
    if (std::holds_alternative<std::string>(src)) return std::get<std::string>(src);
    const GridField& g = std::get<GridField>(src);
    ordered_json out;
    out["grid"] = {{"x0", g.x0}, {"y0", g.y0}, {"dx", g.dx}, {"dy", g.dy},
                   {"nx", g.nx}, {"ny", g.ny}, {"values", g.values}};
    return out;
}

void compute_position(const std::string& text, size_t byte, int& line, int& col) {
    line = 1;
    col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

} // namespace

double point_source_radius() { return 1e-4; }

Scenario parse_scenario(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        int line, col;
        compute_position(text, e.byte > 0 ? e.byte - 1 : 0, line, col);
        throw ParseError(std::string("scenario JSON: ") + e.what(), line, col);
    }

    Scenario s;
    if (!j.contains("name") || !j.at("name").is_string()) fail_field("name", "missing");
    s.name = j.at("name").get<std::string>();

    if (!j.contains("domain") || !j.at("domain").is_object()) fail_field("domain", "missing");
    const auto& d = j.at("domain");
    s.domain.xmin = require_number(d, "domain.xmin");
    s.domain.xmax = require_number(d, "domain.xmax");
    s.domain.ymin = require_number(d, "domain.ymin");
    s.domain.ymax = require_number(d, "domain.ymax");
    s.domain.t_end = require_number(d, "domain.tEnd");
    if (!(s.domain.xmax > s.domain.xmin) || !(s.domain.ymax > s.domain.ymin))
        fail_field("domain", "empty bounding box");
    if (!(s.domain.t_end > 0.0)) fail_field("domain.tEnd", "must be positive");

    if (!j.contains("medium") || !j.at("medium").is_object()) fail_field("medium", "missing");
    const auto& med = j.at("medium");
    auto med_field = [&](const char* key) -> FieldSource {
        if (!med.contains(key)) fail_field(std::string("medium.") + key, "missing");
        return parse_field_source(med.at(key), std::string("medium.") + key);
    };
    s.medium.a = med_field("a");
    s.medium.b = med_field("b");
    s.medium.theta = med_field("theta");
    s.medium.wx = med_field("wx");
    s.medium.wy = med_field("wy");

    if (!j.contains("initialFront") || !j.at("initialFront").is_object())
        fail_field("initialFront", "missing");
    const auto& fr = j.at("initialFront");
    const std::string kind = fr.value("type", "");
    if (kind == "circle") s.front.kind = InitialFrontSpec::Kind::Circle;
    else if (kind == "polygon") s.front.kind = InitialFrontSpec::Kind::Polygon;
    else if (kind == "point") s.front.kind = InitialFrontSpec::Kind::Point;
    else fail_field("initialFront.type", "must be circle, polygon or point");
    if (fr.contains("center")) s.front.center = parse_vec2(fr.at("center"), "initialFront.center");
    if (s.front.kind == InitialFrontSpec::Kind::Circle)
        s.front.radius = require_number(fr, "initialFront.radius");
    else if (fr.contains("radius"))
        s.front.radius = fr.at("radius").get<double>();
    s.front.vertices = fr.value("vertices", 0);
    if (s.front.kind == InitialFrontSpec::Kind::Polygon) {
        if (!fr.contains("points") || !fr.at("points").is_array() || fr.at("points").size() < 3)
            fail_field("initialFront.points", "polygon needs at least 3 points");
        for (size_t i = 0; i < fr.at("points").size(); ++i)
            s.front.points.push_back(
                parse_vec2(fr.at("points")[i], "initialFront.points[" + std::to_string(i) + "]"));
    }
    const std::string mode = fr.value("mode", "outward");
    if (mode == "outward") s.front.mode = FrontMode::OutwardOnly;
    else if (mode == "both") s.front.mode = FrontMode::BothSides;
    else fail_field("initialFront.mode", "must be outward or both");

    if (!j.contains("solver") || !j.at("solver").is_object()) fail_field("solver", "missing");
    const auto& so = j.at("solver");
    s.solver.dt = require_number(so, "solver.dt");
    if (!(s.solver.dt > 0.0)) fail_field("solver.dt", "must be positive");
    const std::string route = so.value("route", "formal");
    if (route == "formal") s.solver.route = Route::FormalG;
    else if (route == "lorentz") s.solver.route = Route::LorentzRanders;
    else fail_field("solver.route", "must be formal or lorentz");
    s.solver.renormalize = so.value("renormalize", true);
    s.solver.resample = so.value("resample", true);
    s.solver.marker_count = so.value("markerCount", 256);
    if (s.solver.marker_count < 8) fail_field("solver.markerCount", "must be >= 8");
    if (!so.contains("outputTimes") || !so.at("outputTimes").is_array() ||
        so.at("outputTimes").empty())
        fail_field("solver.outputTimes", "missing");
    double prev = 0.0;
    for (const auto& x : so.at("outputTimes")) {
        const double t = x.get<double>();
        if (t <= prev) fail_field("solver.outputTimes", "must be strictly increasing from 0");
        if (t > s.domain.t_end + 1e-12)
            fail_field("solver.outputTimes", "exceeds domain.tEnd");
        if (t - prev < s.solver.dt - 1e-12)
            fail_field("solver.dt", "dt must not exceed the smallest output-time gap");
        s.solver.output_times.push_back(t);
        prev = t;
    }

    if (j.contains("oracle")) {
        const auto& orc = j.at("oracle");
        s.oracle.enabled = orc.value("enabled", false);
        s.oracle.spacing = orc.value("spacing", 0.02);
        s.oracle.stencil_rank = orc.value("stencilRank", 2);
        if (!(s.oracle.spacing > 0.0)) fail_field("oracle.spacing", "must be positive");
        if (s.oracle.stencil_rank < 1 || s.oracle.stencil_rank > 8)
            fail_field("oracle.stencilRank", "must be in 1..8");
    }

    if (j.contains("check")) {
        const auto& c = j.at("check");
        s.check.seed_residual = c.value("seedResidual", s.check.seed_residual);
        s.check.unit_speed = c.value("unitSpeed", s.check.unit_speed);
        s.check.k0_identity = c.value("k0Identity", s.check.k0_identity);
        s.check.k0_samples = c.value("k0Samples", s.check.k0_samples);
        s.check.ortho_residual = c.value("orthoResidual", s.check.ortho_residual);
        s.check.route_agreement = c.value("routeAgreement", s.check.route_agreement);
        s.check.route_samples = c.value("routeSamples", s.check.route_samples);
        if (c.contains("richardsHausdorff"))
            s.check.richards_hausdorff = c.at("richardsHausdorff").get<double>();
        if (c.contains("oracleHausdorff"))
            s.check.oracle_hausdorff = c.at("oracleHausdorff").get<double>();
        if (c.contains("arrivalTolerance"))
            s.check.arrival_tolerance = c.at("arrivalTolerance").get<double>();
        if (c.contains("minCutTime")) s.check.min_cut_time = c.at("minCutTime").get<double>();
        if (c.contains("expectedExtinction"))
            s.check.expected_extinction = c.at("expectedExtinction").get<int>();
        s.check.nested = c.value("nested", s.check.nested);
    }

    // the medium must be evaluable (positive axes) over the whole domain
    {
        MediumField m = build_medium(s);
        for (int it = 0; it <= 2; ++it)
            for (int ix = 0; ix <= 4; ++ix)
                for (int iy = 0; iy <= 4; ++iy) {
                    const double t = s.domain.t_end * it / 2.0;
                    const Vec2 p{s.domain.xmin + (s.domain.xmax - s.domain.xmin) * ix / 4.0,
                                 s.domain.ymin + (s.domain.ymax - s.domain.ymin) * iy / 4.0};
                    const EllipseParams e = m.ellipse_at(t, p);
                    if (!(e.a > 0.0)) fail_field("medium.a", "non-positive on the domain");
                    if (!(e.b > 0.0)) fail_field("medium.b", "non-positive on the domain");
                }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("scenario", "cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& s) {
    ordered_json j;
    j["name"] = s.name;
    j["domain"] = {{"xmin", s.domain.xmin}, {"xmax", s.domain.xmax}, {"ymin", s.domain.ymin},
                   {"ymax", s.domain.ymax}, {"tEnd", s.domain.t_end}};
    j["medium"] = {{"a", field_source_to_json(s.medium.a)},
                   {"b", field_source_to_json(s.medium.b)},
                   {"theta", field_source_to_json(s.medium.theta)},
                   {"wx", field_source_to_json(s.medium.wx)},
                   {"wy", field_source_to_json(s.medium.wy)}};
    ordered_json fr;
    switch (s.front.kind) {
        case InitialFrontSpec::Kind::Circle: fr["type"] = "circle"; break;
        case InitialFrontSpec::Kind::Polygon: fr["type"] = "polygon"; break;
        case InitialFrontSpec::Kind::Point: fr["type"] = "point"; break;
    }
    fr["center"] = {s.front.center.x, s.front.center.y};
    fr["radius"] = s.front.radius;
    if (s.front.vertices > 0) fr["vertices"] = s.front.vertices;
    if (!s.front.points.empty()) {
        ordered_json pts = ordered_json::array();
        for (const Vec2& p : s.front.points) pts.push_back({p.x, p.y});
        fr["points"] = pts;
    }
    fr["mode"] = s.front.mode == FrontMode::OutwardOnly ? "outward" : "both";
    j["initialFront"] = fr;
    j["solver"] = {{"dt", s.solver.dt},
                   {"route", s.solver.route == Route::FormalG ? "formal" : "lorentz"},
                   {"renormalize", s.solver.renormalize},
                   {"resample", s.solver.resample},
                   {"markerCount", s.solver.marker_count},
                   {"outputTimes", s.solver.output_times}};
    j["oracle"] = {{"enabled", s.oracle.enabled},
                   {"spacing", s.oracle.spacing},
                   {"stencilRank", s.oracle.stencil_rank}};
    ordered_json c;
    c["seedResidual"] = s.check.seed_residual;
    c["unitSpeed"] = s.check.unit_speed;
    c["k0Identity"] = s.check.k0_identity;
    c["k0Samples"] = s.check.k0_samples;
    c["orthoResidual"] = s.check.ortho_residual;
    c["routeAgreement"] = s.check.route_agreement;
    c["routeSamples"] = s.check.route_samples;
    if (s.check.richards_hausdorff) c["richardsHausdorff"] = *s.check.richards_hausdorff;
    if (s.check.oracle_hausdorff) c["oracleHausdorff"] = *s.check.oracle_hausdorff;
    if (s.check.arrival_tolerance) c["arrivalTolerance"] = *s.check.arrival_tolerance;
    if (s.check.min_cut_time) c["minCutTime"] = *s.check.min_cut_time;
    if (s.check.expected_extinction) c["expectedExtinction"] = *s.check.expected_extinction;
    c["nested"] = s.check.nested;
    j["check"] = c;
    return j.dump(2) + "\n";
}

MediumField build_medium(const Scenario& s) {
    return MediumField(to_field_spec(s.medium.a), to_field_spec(s.medium.b),
                       to_field_spec(s.medium.theta), to_field_spec(s.medium.wx),
                       to_field_spec(s.medium.wy), s.domain);
}

InitialFront build_initial_front(const Scenario& s) {
    InitialFront f;
    f.mode = s.front.mode;
    int count = s.front.vertices > 0 ? s.front.vertices : s.solver.marker_count;
    count = std::max(count, 8);

    switch (s.front.kind) {
        case InitialFrontSpec::Kind::Circle:
        case InitialFrontSpec::Kind::Point: {
            double r = s.front.radius;
            if (s.front.kind == InitialFrontSpec::Kind::Point)
                r = s.front.radius > 0.0 ? s.front.radius : point_source_radius();
            for (int i = 0; i < count; ++i) {
                const double phi = 2.0 * M_PI * i / count;
                f.ring.push_back(
                    {s.front.center.x + r * std::cos(phi), s.front.center.y + r * std::sin(phi)});
            }
            break;
        }
        case InitialFrontSpec::Kind::Polygon: {
            f.ring = resample_by_arclength(s.front.points, true, count);
            break;
        }
    }
    f.orientation = signed_area(f.ring) >= 0.0 ? Orientation::CCW : Orientation::CW;
    return f;
}

PropagateOptions propagate_options(const Scenario& s) {
    PropagateOptions o;
    o.dt = s.solver.dt;
    o.route = s.solver.route;
    o.renormalize = s.solver.renormalize;
    o.resample = s.solver.resample;
    o.target_markers = s.solver.marker_count;
    return o;
}

} // namespace conewave
