#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "conewave/runner.hpp"

namespace {

// stderr gets a one-line machine-readable record, stdout stays for results
void report_error(const std::string& type, const std::string& message, int line = -1,
                  int column = -1, const std::string& field = "") {
    nlohmann::ordered_json rec;
    rec["error"]["type"] = type;
    rec["error"]["message"] = message;
    if (line >= 0) rec["error"]["line"] = line;
    if (column >= 0) rec["error"]["column"] = column;
    if (!field.empty()) rec["error"]["field"] = field;
    std::cerr << rec.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conewave: anisotropic wavefront propagation via cone geodesics"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    double dt_override = 0.0;
    std::string route_override;
    int markers_override = 0;
    bool geojson = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
        cmd->add_option("--dt", dt_override, "override solver.dt");
        cmd->add_option("--route", route_override, "override solver.route (formal|lorentz)");
        cmd->add_option("--markers", markers_override, "override solver.markerCount");
        cmd->add_option("--out", out_dir, "output directory (default: out)");
        cmd->add_flag("--geojson", geojson, "also write GeoJSON LineStrings");
    };

    CLI::App* c_prop = app.add_subcommand("propagate", "march the front along cone geodesics");
    CLI::App* c_rich = app.add_subcommand("richards", "march the front with the PDE route");
    CLI::App* c_orac = app.add_subcommand("oracle", "first-arrival grid and iso-contours");
    CLI::App* c_comp = app.add_subcommand("compare", "route-vs-route and route-vs-oracle report");
    CLI::App* c_ext = app.add_subcommand("extinction", "strong-wind extinction report");
    CLI::App* c_chk = app.add_subcommand("check", "run the scenario invariant suite");
    for (CLI::App* cmd : {c_prop, c_rich, c_orac, c_comp, c_ext, c_chk}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        conewave::Overrides ov;
        if (dt_override > 0.0) ov.dt = dt_override;
        if (markers_override > 0) ov.markers = markers_override;
        if (!route_override.empty()) {
            if (route_override == "formal") ov.route = conewave::Route::FormalG;
            else if (route_override == "lorentz") ov.route = conewave::Route::LorentzRanders;
            else {
                report_error("ValidationError", "--route must be formal or lorentz");
                return 2;
            }
        }
        const conewave::Scenario sc =
            conewave::apply_overrides(conewave::load_scenario(scenario_path), ov);

        if (c_prop->parsed()) {
            conewave::run_propagate(sc, out_dir, geojson);
            std::cout << "fronts written to " << out_dir << "/fronts.csv\n";
        } else if (c_rich->parsed()) {
            conewave::run_richards(sc, out_dir, geojson);
            std::cout << "fronts written to " << out_dir << "/fronts_richards.csv\n";
        } else if (c_orac->parsed()) {
            const conewave::ArrivalGrid g = conewave::run_oracle(sc, out_dir);
            if (g.coarse_warning)
                report_error("GridTooCoarse", "oracle spacing exceeds the oval feature scale");
            std::cout << "arrival grid written to " << out_dir << "/arrival.txt\n";
        } else if (c_comp->parsed()) {
            std::cout << conewave::run_compare(sc, out_dir);
        } else if (c_ext->parsed()) {
            std::cout << conewave::run_extinction(sc, out_dir);
        } else if (c_chk->parsed()) {
            const bool ok = conewave::run_check(sc, std::cout);
            if (!ok) return 4;
        }
        return 0;
    } catch (const conewave::ParseError& e) {
        report_error("ParseError", e.what(), e.line(), e.column());
        return 2;
    } catch (const conewave::ValidationError& e) {
        report_error("ValidationError", e.what(), -1, -1, e.field());
        return 2;
    } catch (const conewave::Error& e) {
        report_error(conewave::error_code_name(e.code()), e.what());
        return 3;
    } catch (const std::exception& e) {
        report_error("Internal", e.what());
        return 3;
    }
}
