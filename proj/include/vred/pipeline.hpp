#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "vred/composite.hpp"
#include "vred/core.hpp"
#include "vred/detect.hpp"
#include "vred/export.hpp"
#include "vred/ingest.hpp"
#include "vred/mass.hpp"
#include "vred/sha256.hpp"
#include "vred/stats.hpp"
#include "vred/storage.hpp"
#include "vred/version.hpp"

namespace vred {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Run configuration. Flags override config-file values; validation reports
// the offending field by name.
// ---------------------------------------------------------------------------

struct run_config {
    std::string availability_path;
    std::string capacities_path;
    std::string demand_path;  // optional; flat demand when empty
    std::string out_dir = "out";
    int start_year = 1982;
    std::vector<std::string> technologies = {"pv", "onshore", "offshore"};
    std::vector<double> taus = threshold_grid::default_grid().levels;
    std::int64_t max_duration = 0;  // 0 = min(two years, record length)
    std::int64_t min_duration = 1;
    std::int64_t duration_step = 1;
    double mass_cutoff = 0.75;
    std::vector<int> winter_excluded_months = {5, 6, 7, 8, 9};
    std::vector<std::string> scenarios = {"island", "copperplate"};
    std::vector<std::string> regions;  // empty = all regions in the inputs
    int jobs = 1;
    double demand_margin = 0.0;
    double efficiency = 1.0;

    void validate() const {
        if (availability_path.empty()) throw config_error("availability", "path not set");
        if (!fs::exists(availability_path))
            throw config_error("availability", "file not found: " + availability_path);
        if (capacities_path.empty()) throw config_error("capacities", "path not set");
        if (!fs::exists(capacities_path))
            throw config_error("capacities", "file not found: " + capacities_path);
        if (!demand_path.empty() && !fs::exists(demand_path))
            throw config_error("demand", "file not found: " + demand_path);
        if (technologies.empty()) throw config_error("technologies", "empty technology whitelist");
        if (taus.empty()) throw config_error("taus", "no thresholds");
        double prev = 0.0;
        std::set<long> percents;
        for (double t : taus) {
            if (!(t > 0.0 && t <= 1.0))
                throw config_error("taus", "value " + format_double(t) + " outside (0, 1]");
            if (!(t > prev)) throw config_error("taus", "values must be strictly increasing");
            prev = t;
            if (!percents.insert(std::lround(t * 100.0)).second)
                throw config_error("taus", "levels collide at percent resolution (file naming)");
        }
        if (min_duration < 1) throw config_error("min-duration", "must be >= 1");
        if (max_duration != 0 && max_duration < min_duration)
            throw config_error("max-duration", "smaller than min-duration");
        if (duration_step < 1) throw config_error("duration-step", "must be >= 1");
        if (!(mass_cutoff > 0.0 && mass_cutoff <= 1.0))
            throw config_error("mass-cutoff", "outside (0, 1]");
        for (int m : winter_excluded_months)
            if (m < 1 || m > 12) throw config_error("winter-exclude", "month outside 1..12");
        if (scenarios.empty()) throw config_error("scenarios", "none selected");
        for (const auto& s : scenarios)
            if (s != "island" && s != "copperplate")
                throw config_error("scenarios", "unknown scenario '" + s + "'");
        if (jobs < 1) throw config_error("jobs", "must be >= 1");
        if (!(efficiency > 0.0 && efficiency <= 1.0))
            throw config_error("efficiency", "outside (0, 1]");
        if (demand_margin <= -1.0) throw config_error("margin", "must be > -1");
    }

    csv_schema schema() const {
        csv_schema s;
        s.start_year = start_year;
        s.technologies = technologies;
        return s;
    }

    threshold_grid thresholds() const {
        threshold_grid g;
        g.levels = taus;
        return g;
    }

    duration_grid durations(std::int64_t record_hours) const {
        const std::int64_t mx =
            max_duration == 0 ? std::min<std::int64_t>(2 * hours_per_year, record_hours)
                              : max_duration;
        if (duration_step == 1) return duration_grid::full(mx, min_duration);
        std::vector<std::int64_t> ds;
        for (std::int64_t d = mx; d >= min_duration; d -= duration_step) ds.push_back(d);
        return duration_grid::custom(std::move(ds));
    }

    mass_config mass() const {
        mass_config cfg;
        cfg.cutoff = mass_cutoff;
        cfg.excluded_months = std::set<int>(winter_excluded_months.begin(),
                                            winter_excluded_months.end());
        for (double t : taus)
            if (t <= mass_cutoff) cfg.included.push_back(t);
        bool has_cutoff = false;
        for (double t : cfg.included) has_cutoff |= t == mass_cutoff;
        if (!has_cutoff)
            throw config_error("mass-cutoff",
                               format_double(mass_cutoff) + " is not one of the taus");
        return cfg;
    }

    bool scenario_enabled(std::string_view name) const {
        for (const auto& s : scenarios)
            if (s == name) return true;
        return false;
    }

    /// Canonical serialization used for the manifest's config hash.
    std::string canonical() const {
        nlohmann::json j;
        j["availability"] = availability_path;
        j["capacities"] = capacities_path;
        j["demand"] = demand_path;
        j["start_year"] = start_year;
        j["technologies"] = technologies;
        j["taus"] = taus;
        j["max_duration"] = max_duration;
        j["min_duration"] = min_duration;
        j["duration_step"] = duration_step;
        j["mass_cutoff"] = mass_cutoff;
        j["winter_excluded_months"] = winter_excluded_months;
        j["scenarios"] = scenarios;
        j["regions"] = regions;
        j["demand_margin"] = demand_margin;
        j["efficiency"] = efficiency;
        return j.dump();
    }
};

// ---------------------------------------------------------------------------
// Input bundle and scenario series.
// ---------------------------------------------------------------------------

struct data_bundle {
    series_map series;
    capacity_table caps;
    time_axis axis;
};

inline data_bundle load_bundle(const run_config& cfg, bool require_common_axis = true) {
    data_bundle b;
    b.series = load_availability(cfg.availability_path, cfg.schema());
    b.caps = load_capacities(cfg.capacities_path, cfg.schema());
    b.axis = b.series.begin()->second.axis;
    if (require_common_axis) {
        for (const auto& [key, s] : b.series)
            if (!(s.axis == b.axis))
                throw parameter_error("series " + key.str() + " has a different time axis; fix the input");
    }
    return b;
}

/// Regions taking part in the analysis: positive capacity and a series for at
/// least one technology, restricted to the configured region filter.
inline std::vector<std::string> scenario_regions(const run_config& cfg, const data_bundle& b) {
    std::set<std::string> wanted(cfg.regions.begin(), cfg.regions.end());
    std::vector<std::string> out;
    for (const auto& [key, mw] : b.caps.entries) {
        if (mw <= 0.0 || !b.series.contains(key)) continue;
        if (!wanted.empty() && !wanted.contains(key.region)) continue;
        if (out.empty() || out.back() != key.region) out.push_back(key.region);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw parameter_error("no region has both capacity and availability data");
    return out;
}

/// The series the detection step runs on, in deterministic order: per-region
/// technologies and portfolio for the island scenario, the pan-regional
/// composite per technology and as a portfolio for the copperplate scenario.
inline std::vector<availability_series> scenario_series(const run_config& cfg,
                                                        const data_bundle& b) {
    std::vector<availability_series> out;
    if (cfg.scenario_enabled("island")) {
        for (const auto& region : scenario_regions(cfg, b)) {
            for (const auto& tech : cfg.technologies) {
                const series_key key{region, tech};
                if (b.caps.get(key) > 0.0 && b.series.contains(key))
                    out.push_back(b.series.at(key));
            }
            out.push_back(build_portfolio(region, b.series, b.caps));
        }
    }
    if (cfg.scenario_enabled("copperplate")) {
        for (const auto& tech : cfg.technologies) {
            bool any = false;
            for (const auto& [key, mw] : b.caps.entries)
                any |= key.technology == tech && mw > 0.0 && b.series.contains(key);
            if (any) out.push_back(build_copperplate(b.series, b.caps, tech));
        }
        out.push_back(build_copperplate(b.series, b.caps));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Manifest: config hash, grids, tool version, and a content hash for every
// output file. No timestamps, so reruns stay byte-identical.
// ---------------------------------------------------------------------------

class manifest {
public:
    manifest(const run_config& cfg, const fs::path& out_dir) : out_dir_(out_dir) {
        const fs::path path = out_dir_ / "manifest.json";
        if (fs::exists(path)) {
            try {
                std::ifstream in(path);
                in >> j_;
            } catch (...) {
                j_ = nlohmann::json::object();
            }
        }
        j_["tool"] = "vred";
        j_["version"] = version;
        j_["config_hash"] = sha256::of(cfg.canonical());
        j_["taus"] = cfg.taus;
        nlohmann::json grid;
        grid["max_duration"] = cfg.max_duration;
        grid["min_duration"] = cfg.min_duration;
        grid["step"] = cfg.duration_step;
        grid["full_density"] = cfg.duration_step == 1;
        j_["duration_grid"] = grid;
        if (!j_.contains("files")) j_["files"] = nlohmann::json::object();
    }

    void record(const fs::path& rel) {
        j_["files"][rel.generic_string()] = sha256::of(read_file(out_dir_ / rel));
    }

    void write() {
        std::ofstream out(out_dir_ / "manifest.json", std::ios::binary);
        if (!out) throw io_error("cannot write manifest in " + out_dir_.string());
        out << j_.dump(2) << '\n';
    }

private:
    fs::path out_dir_;
    nlohmann::json j_;  // plain json: keys serialize sorted
};

/// Tracks files written by one command so they can be removed if it fails.
class output_set {
public:
    explicit output_set(fs::path out_dir) : out_dir_(std::move(out_dir)) {}

    fs::path at(const fs::path& rel) {
        fs::create_directories((out_dir_ / rel).parent_path());
        written_.push_back(rel);
        return out_dir_ / rel;
    }

    void discard() {
        for (const auto& rel : written_) {
            std::error_code ec;
            fs::remove(out_dir_ / rel, ec);
        }
    }

    const std::vector<fs::path>& written() const { return written_; }

private:
    fs::path out_dir_;
    std::vector<fs::path> written_;
};

// ---------------------------------------------------------------------------
// Sweeps: compute in parallel over (series, threshold) tasks, or read back
// the catalogs an earlier detect run wrote.
// ---------------------------------------------------------------------------

using sweep_set = std::map<std::string, sweep_result>;

inline std::string catalog_filename(const std::string& key, double tau) {
    const int pct = static_cast<int>(std::lround(tau * 100.0));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "_tau%03d", pct);
    return key + buf;
}

inline sweep_set compute_sweeps(const run_config& cfg, const std::vector<availability_series>& list) {
    if (list.empty()) throw parameter_error("no series to analyze");
    const duration_grid grid = cfg.durations(list.front().n_hours());
    const auto& taus = cfg.taus;

    struct task {
        const availability_series* series;
        double tau;
    };
    std::vector<task> tasks;
    for (const auto& s : list)
        for (double tau : taus) tasks.push_back({&s, tau});

    std::vector<event_catalog> catalogs(tasks.size());
    parallel_for(tasks.size(), cfg.jobs, [&](size_t i) {
        const auto& t = tasks[i];
        event_catalog c = detect_events(*t.series, absolute_threshold(*t.series, t.tau), grid);
        c.threshold_rel = t.tau;
        for (auto& ev : c.events) ev.threshold_rel = t.tau;
        catalogs[i] = std::move(c);
    });

    sweep_set out;
    for (size_t i = 0; i < tasks.size(); ++i)
        out[tasks[i].series->key.str()].emplace(tasks[i].tau, std::move(catalogs[i]));
    return out;
}

/// Reads the catalogs a previous `detect` wrote for the expected keys. A
/// missing file is an actionable error pointing at the detect step.
inline sweep_set read_sweeps(const run_config& cfg, const std::vector<std::string>& keys) {
    sweep_set out;
    for (const auto& key : keys) {
        for (double tau : cfg.taus) {
            const fs::path path =
                fs::path(cfg.out_dir) / "catalogs" / (catalog_filename(key, tau) + ".csv");
            if (!fs::exists(path))
                throw io_error("missing catalog " + path.string() +
                               "; run `vred detect` with the same config first");
            event_catalog c = read_catalog_csv(path);
            c.key = key;
            c.threshold_rel = tau;
            out[key].emplace(tau, std::move(c));
        }
    }
    return out;
}

inline std::vector<std::string> expected_keys(const run_config& cfg, const data_bundle& b) {
    std::vector<std::string> keys;
    for (const auto& s : scenario_series(cfg, b)) keys.push_back(s.key.str());
    return keys;
}

// ---------------------------------------------------------------------------
// Commands. Each returns the process exit code; on failure every file it
// wrote in this invocation is removed before the error propagates.
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
int with_outputs(const run_config& cfg, F&& body) {
    output_set outputs(cfg.out_dir);
    try {
        body(outputs);
        return 0;
    } catch (...) {
        outputs.discard();
        throw;
    }
}

inline void write_detect_outputs(const run_config& cfg, const sweep_set& sweeps,
                                 output_set& outputs) {
    manifest m(cfg, cfg.out_dir);
    for (const auto& [key, result] : sweeps) {
        for (const auto& [tau, catalog] : result) {
            const fs::path csv_rel = fs::path("catalogs") / (catalog_filename(key, tau) + ".csv");
            const fs::path json_rel = fs::path("catalogs") / (catalog_filename(key, tau) + ".json");
            write_catalog_csv(outputs.at(csv_rel), catalog);
            write_catalog_json(outputs.at(json_rel), catalog);
            m.record(csv_rel);
            m.record(json_rel);
        }
    }
    m.write();
}

inline void write_stats_outputs(const run_config& cfg, const sweep_set& sweeps,
                                const time_axis& axis, output_set& outputs) {
    std::vector<frequency_curve> curves;
    std::vector<max_duration_table> tables;
    for (const auto& [key, result] : sweeps) {
        for (const auto& [tau, catalog] : result) {
            curves.push_back(frequency_duration(catalog, axis.n_years()));
            tables.push_back(max_durations(catalog, axis, max_duration_grouping::overall));
            tables.push_back(max_durations(catalog, axis, max_duration_grouping::per_year));
            tables.push_back(max_durations(catalog, axis, max_duration_grouping::per_month));
        }
    }
    manifest m(cfg, cfg.out_dir);
    write_frequency_csv(outputs.at("frequency.csv"), curves);
    write_maxdur_csv(outputs.at("maxdur.csv"), tables);
    m.record("frequency.csv");
    m.record("maxdur.csv");
    m.write();
}

inline void write_effects_outputs(const run_config& cfg, const data_bundle& b,
                                  const sweep_set& sweeps, output_set& outputs) {
    const auto regions = scenario_regions(cfg, b);
    auto sweeps_for = [&](const std::string& key) -> const sweep_result* {
        auto it = sweeps.find(key);
        return it == sweeps.end() ? nullptr : &it->second;
    };
    auto tech_sweeps_of = [&](const std::string& label) {
        std::map<std::string, sweep_result> out;
        for (const auto& tech : cfg.technologies)
            if (const auto* s = sweeps_for(label + "_" + tech)) out.emplace(tech, *s);
        return out;
    };

    std::vector<effect_table> tables;
    if (cfg.scenario_enabled("island")) {
        effect_table portfolio_table;
        portfolio_table.metric = "portfolio";
        for (const auto& region : regions) {
            const auto* pf = sweeps_for(region + "_portfolio");
            if (!pf) continue;
            effect_row row = portfolio_effect(region, tech_sweeps_of(region), *pf);
            row.weight = generation_potential(region, b.series, b.caps);
            portfolio_table.rows.push_back(std::move(row));
        }
        // The copperplate composite gets its own portfolio-effect row; it does
        // not enter the region average.
        if (cfg.scenario_enabled("copperplate")) {
            if (const auto* cp_pf = sweeps_for("CP_portfolio")) {
                effect_row cp_row = portfolio_effect("CP", tech_sweeps_of("CP"), *cp_pf);
                portfolio_table.aggregate = aggregate_effects(portfolio_table.rows);
                portfolio_table.rows.push_back(std::move(cp_row));
            } else {
                portfolio_table.aggregate = aggregate_effects(portfolio_table.rows);
            }
        } else {
            portfolio_table.aggregate = aggregate_effects(portfolio_table.rows);
        }
        tables.push_back(std::move(portfolio_table));

        if (cfg.scenario_enabled("copperplate")) {
            effect_table balancing_table;
            balancing_table.metric = "balancing";
            auto cp_all = tech_sweeps_of("CP");
            if (const auto* cp_pf = sweeps_for("CP_portfolio"))
                cp_all.emplace("portfolio", *cp_pf);
            for (const auto& region : regions) {
                auto region_all = tech_sweeps_of(region);
                if (const auto* pf = sweeps_for(region + "_portfolio"))
                    region_all.emplace("portfolio", *pf);
                effect_row row = balancing_effect(region, region_all, cp_all);
                row.weight = generation_potential(region, b.series, b.caps);
                balancing_table.rows.push_back(std::move(row));
            }
            balancing_table.aggregate = aggregate_effects(balancing_table.rows);
            tables.push_back(std::move(balancing_table));
        }
    }
    manifest m(cfg, cfg.out_dir);
    write_effects_csv(outputs.at("effects.csv"), tables);
    m.record("effects.csv");
    m.write();
}

struct mass_results {
    std::vector<std::pair<std::string, std::vector<pair_events>>> per_region;
    mass_report_table report;
};

inline mass_results compute_mass(const run_config& cfg, const sweep_set& sweeps,
                                 const time_axis& axis, const std::vector<std::string>& regions) {
    const mass_config mcfg = cfg.mass();
    mass_results out;
    auto add = [&](const std::string& label, const std::string& key) {
        auto it = sweeps.find(key);
        if (it == sweeps.end()) return;
        auto calendars = build_calendars(it->second, axis, mcfg);
        out.per_region.emplace_back(label, score_pairs(calendars, axis, mcfg));
    };
    if (cfg.scenario_enabled("island"))
        for (const auto& region : regions) add(region, region + "_portfolio");
    if (cfg.scenario_enabled("copperplate")) add("CP", "CP_portfolio");
    out.report = mass_report(out.per_region);
    return out;
}

inline void write_mass_outputs(const run_config& cfg, const mass_results& results,
                               output_set& outputs) {
    manifest m(cfg, cfg.out_dir);
    write_mass_csv(outputs.at("mass.csv"), results.report, results.per_region);
    m.record("mass.csv");
    m.write();
}

/// Per-region demand profiles from a `region,hour_index,value` CSV.
inline std::map<std::string, demand_profile> load_demand(const std::string& path,
                                                         const time_axis& axis) {
    const std::string text = read_file(path);
    csv_lines lines(text);
    std::string_view header;
    if (!lines.next(header) || split_csv_line(header).size() != 3)
        throw schema_error(path + ": expected header region,hour_index,value");
    std::map<std::string, std::vector<double>> values;
    std::string_view line;
    std::int64_t row = 0;
    while (lines.next(line)) {
        ++row;
        const auto f = split_csv_line(line);
        if (f.size() != 3) throw schema_error(path + ": bad row " + std::to_string(row));
        std::int64_t hour;
        double v;
        if (!parse_int(f[1], hour) || !parse_double(f[2], v) || v < 0.0)
            throw schema_error(path + ": bad row " + std::to_string(row));
        auto& vec = values[std::string(f[0])];
        if (static_cast<std::int64_t>(vec.size()) != hour)
            throw gap_error(path + ": demand hours for " + std::string(f[0]) +
                                " must be contiguous from 0; got hour " + std::to_string(hour),
                            static_cast<std::int64_t>(vec.size()));
        vec.push_back(v);
    }
    std::map<std::string, demand_profile> out;
    for (auto& [region, vec] : values) {
        if (static_cast<std::int64_t>(vec.size()) != axis.n_hours)
            throw gap_error(path + ": demand for " + region + " covers " +
                                std::to_string(vec.size()) + " of " + std::to_string(axis.n_hours) +
                                " hours",
                            static_cast<std::int64_t>(vec.size()));
        out[region].values = std::move(vec);
    }
    return out;
}

inline void write_storage_outputs(const run_config& cfg, const data_bundle& b,
                                  const sweep_set& sweeps, output_set& outputs) {
    const auto regions = scenario_regions(cfg, b);
    const mass_results mass = compute_mass(cfg, sweeps, b.axis, regions);

    std::map<std::string, demand_profile> demands;
    if (!cfg.demand_path.empty()) demands = load_demand(cfg.demand_path, b.axis);
    auto demand_for = [&](const std::string& region) -> demand_profile {
        if (cfg.demand_path.empty()) return demand_profile::flat(b.axis.n_hours);
        if (region == "CP") {  // pan-regional demand: sum over all profiles
            demand_profile total = demand_profile::flat(b.axis.n_hours, 0.0);
            for (const auto& [_, d] : demands)
                for (size_t h = 0; h < d.values.size(); ++h) total.values[h] += d.values[h];
            return total;
        }
        auto it = demands.find(region);
        if (it == demands.end())
            throw parameter_error("demand file has no rows for region " + region);
        return it->second;
    };

    std::vector<std::tuple<std::string, std::string, drawdown_result>> storage_rows;
    std::vector<coincidence_row> coincidence_rows;
    auto run_one = [&](const std::string& label, const std::string& scenario,
                       const availability_series& series) {
        const auto net = net_series(series, demand_for(label), cfg.demand_margin, cfg.efficiency);
        drawdown_result dd = max_drawdown(net.net);
        // Compare against the region's most extreme winter drought-mass event.
        for (const auto& row : mass.report.rows) {
            if (row.region != label || !row.row_max) continue;
            coincidence_row c;
            c.region = label;
            c.scenario = scenario;
            c.pair_label = row.row_max->pair_label();
            c.event_start = row.row_max->abs_start();
            c.event_end = row.row_max->abs_end();
            c.metrics = coincidence(dd, *row.row_max);
            coincidence_rows.push_back(std::move(c));
        }
        dd.level.clear();  // trajectories are not persisted
        storage_rows.emplace_back(label, scenario, std::move(dd));
    };

    if (cfg.scenario_enabled("island"))
        for (const auto& region : regions)
            run_one(region, "island", build_portfolio(region, b.series, b.caps));
    if (cfg.scenario_enabled("copperplate"))
        run_one("CP", "copperplate", build_copperplate(b.series, b.caps));

    manifest m(cfg, cfg.out_dir);
    write_storage_csv(outputs.at("storage.csv"), storage_rows);
    write_coincidence_csv(outputs.at("coincidence.csv"), coincidence_rows);
    m.record("storage.csv");
    m.record("coincidence.csv");
    m.write();
}

}  // namespace detail

inline int run_validate(const run_config& cfg, std::ostream& out = std::cout) {
    cfg.validate();
    const data_bundle b = load_bundle(cfg, /*require_common_axis=*/false);
    const validation_report report = validate_bundle(b.series, b.caps);
    if (report.ok()) {
        out << "ok: " << b.series.size() << " series, " << b.caps.entries.size()
            << " capacity entries\n";
        return 0;
    }
    for (const auto& f : report.findings) out << "finding: " << f.message << "\n";
    return 1;
}

inline int run_detect(const run_config& cfg) {
    cfg.validate();
    const data_bundle b = load_bundle(cfg);
    const auto series = scenario_series(cfg, b);
    const sweep_set sweeps = compute_sweeps(cfg, series);
    return detail::with_outputs(cfg, [&](output_set& outputs) {
        detail::write_detect_outputs(cfg, sweeps, outputs);
    });
}

inline int run_stats(const run_config& cfg) {
    cfg.validate();
    const data_bundle b = load_bundle(cfg);
    const sweep_set sweeps = read_sweeps(cfg, expected_keys(cfg, b));
    return detail::with_outputs(cfg, [&](output_set& outputs) {
        detail::write_stats_outputs(cfg, sweeps, b.axis, outputs);
    });
}

inline int run_effects(const run_config& cfg) {
    cfg.validate();
    const data_bundle b = load_bundle(cfg);
    const sweep_set sweeps = read_sweeps(cfg, expected_keys(cfg, b));
    return detail::with_outputs(cfg, [&](output_set& outputs) {
        detail::write_effects_outputs(cfg, b, sweeps, outputs);
    });
}

inline int run_mass(const run_config& cfg) {
    cfg.validate();
    const data_bundle b = load_bundle(cfg);
    const sweep_set sweeps = read_sweeps(cfg, expected_keys(cfg, b));
    return detail::with_outputs(cfg, [&](output_set& outputs) {
        const auto results = detail::compute_mass(cfg, sweeps, b.axis, scenario_regions(cfg, b));
        detail::write_mass_outputs(cfg, results, outputs);
    });
}

inline int run_storage(const run_config& cfg) {
    cfg.validate();
    const data_bundle b = load_bundle(cfg);
    const sweep_set sweeps = read_sweeps(cfg, expected_keys(cfg, b));
    return detail::with_outputs(cfg, [&](output_set& outputs) {
        detail::write_storage_outputs(cfg, b, sweeps, outputs);
    });
}

/// Full pipeline in one pass; the sweeps are computed once and shared.
inline int run_all(const run_config& cfg) {
    cfg.validate();
    const data_bundle b = load_bundle(cfg);
    const auto series = scenario_series(cfg, b);
    const sweep_set sweeps = compute_sweeps(cfg, series);
    return detail::with_outputs(cfg, [&](output_set& outputs) {
        detail::write_detect_outputs(cfg, sweeps, outputs);
        detail::write_stats_outputs(cfg, sweeps, b.axis, outputs);
        detail::write_effects_outputs(cfg, b, sweeps, outputs);
        const auto results = detail::compute_mass(cfg, sweeps, b.axis, scenario_regions(cfg, b));
        detail::write_mass_outputs(cfg, results, outputs);
        detail::write_storage_outputs(cfg, b, sweeps, outputs);
    });
}

}  // namespace vred
