#pragma once

#include <iosfwd>
#include <optional>

#include "conewave/io.hpp"
#include "conewave/scenario.hpp"

namespace conewave {

struct Overrides {
    std::optional<double> dt;
    std::optional<Route> route;
    std::optional<int> markers;
};

Scenario apply_overrides(Scenario s, const Overrides& o);

// Subcommand bodies; out_dir empty suppresses file output (library/tests use).
PropagateResult run_propagate(const Scenario& sc, const std::string& out_dir,
                              bool geojson = false);
PropagateResult run_richards(const Scenario& sc, const std::string& out_dir,
                             bool geojson = false);
ArrivalGrid run_oracle(const Scenario& sc, const std::string& out_dir);
std::string run_compare(const Scenario& sc, const std::string& out_dir); // report JSON
std::string run_extinction(const Scenario& sc, const std::string& out_dir);

// Property suite; prints one PASS/FAIL line per property to `log`.
bool run_check(const Scenario& sc, std::ostream& log);

} // namespace conewave
