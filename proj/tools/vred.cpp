// vred: detect variable-renewable-energy droughts in hourly availability
// series and derive frequency, duration, portfolio/balancing, drought-mass,
// and storage-drawdown statistics.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vred/pipeline.hpp"
#include "vred/version.hpp"

namespace {

int dispatch(const std::string& command, const vred::run_config& cfg) {
    if (command == "validate") return vred::run_validate(cfg);
    if (command == "detect") return vred::run_detect(cfg);
    if (command == "stats") return vred::run_stats(cfg);
    if (command == "effects") return vred::run_effects(cfg);
    if (command == "mass") return vred::run_mass(cfg);
    if (command == "storage") return vred::run_storage(cfg);
    if (command == "all") return vred::run_all(cfg);
    throw vred::parameter_error("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variable renewable energy drought analyzer"};
    app.set_version_flag("--version", std::string("vred ") + vred::version);
    app.set_config("--config", "", "key-value config file; flags override its values");

    vred::run_config cfg;
    cfg.jobs = std::max(1u, std::thread::hardware_concurrency());

    app.add_option("--availability", cfg.availability_path,
                   "hourly availability CSV (long or wide layout, .gz accepted)");
    app.add_option("--capacities", cfg.capacities_path, "installed capacity CSV");
    app.add_option("--demand", cfg.demand_path, "hourly demand CSV (default: flat profile)");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_option("--start-year", cfg.start_year, "calendar year of hour 0");
    app.add_option("--technologies", cfg.technologies, "technology whitelist")->delimiter(',');
    app.add_option("--taus", cfg.taus, "relative thresholds, ascending in (0,1]")->delimiter(',');
    app.add_option("--regions", cfg.regions, "restrict to these regions")->delimiter(',');
    app.add_option("--max-duration", cfg.max_duration,
                   "longest candidate duration in hours (0 = two years or record length)");
    app.add_option("--min-duration", cfg.min_duration, "shortest candidate duration in hours");
    app.add_option("--duration-step", cfg.duration_step,
                   "duration grid step; values above 1 mark catalogs approximate");
    app.add_option("--mass-cutoff", cfg.mass_cutoff, "cut-off threshold of the drought-mass score");
    app.add_option("--winter-exclude", cfg.winter_excluded_months,
                   "months excluded from the winter season")
        ->delimiter(',');
    app.add_option("--scenarios", cfg.scenarios, "island,copperplate")->delimiter(',');
    app.add_option("--jobs", cfg.jobs, "worker threads");
    app.add_option("--margin", cfg.demand_margin, "generation sizing margin over energy balance");
    app.add_option("--efficiency", cfg.efficiency, "round-trip efficiency applied when charging");

    for (const char* name : {"validate", "detect", "stats", "effects", "mass", "storage", "all"})
        app.add_subcommand(name)->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), cfg);
    } catch (const vred::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const vred::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
