#pragma once

#include <optional>
#include <string>
#include <variant>

#include "conewave/front.hpp"
#include "conewave/oracle.hpp"

namespace conewave {

struct SolverParams {
    double dt = 1e-3;
    Route route = Route::FormalG;
    bool renormalize = true;
    bool resample = true;
    int marker_count = 256;
    std::vector<double> output_times;
};

struct OracleParams {
    bool enabled = false;
    double spacing = 0.02;
    int stencil_rank = 2;
};

// Tolerances the scenario is documented to satisfy under `check`.
struct CheckParams {
    double seed_residual = 1e-8;
    double unit_speed = 1e-10;
    double k0_identity = 1e-8;
    int k0_samples = 200;
    double ortho_residual = 5e-3;
    double route_agreement = 1e-5;
    int route_samples = 8;
    std::optional<double> richards_hausdorff;
    std::optional<double> oracle_hausdorff;   // multiple of oracle spacing
    std::optional<double> arrival_tolerance;  // absolute |arrival - t| bound
    std::optional<double> min_cut_time;     // no cuts expected before this
    std::optional<int> expected_extinction;
    bool nested = true; // later fronts contain earlier ones (outward mode)
};

struct InitialFrontSpec {
    enum class Kind { Circle, Polygon, Point };
    Kind kind = Kind::Circle;
    Vec2 center{0.0, 0.0};
    double radius = 0.0;       // Point sources expand to a tiny circle
    int vertices = 0;          // 0: solver marker count
    std::vector<Vec2> points;  // Polygon
    FrontMode mode = FrontMode::OutwardOnly;
};

// One medium field as written in the scenario file.
using FieldSource = std::variant<std::string, GridField>;

struct MediumSpec {
    FieldSource a{std::string("1")};
    FieldSource b{std::string("1")};
    FieldSource theta{std::string("0")};
    FieldSource wx{std::string("0")};
    FieldSource wy{std::string("0")};
};

struct Scenario {
    std::string name;
    Domain domain;
    MediumSpec medium;
    InitialFrontSpec front;
    SolverParams solver;
    OracleParams oracle;
    CheckParams check;
};

// Parses and fully validates a scenario document.  Throws ParseError with
// line/column for malformed JSON or expressions, ValidationError naming the
// offending field otherwise.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

std::string serialize_scenario(const Scenario& s);

MediumField build_medium(const Scenario& s);
InitialFront build_initial_front(const Scenario& s);
PropagateOptions propagate_options(const Scenario& s);

double point_source_radius();

} // namespace conewave
