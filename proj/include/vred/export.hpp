#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vred/core.hpp"
#include "vred/csv.hpp"
#include "vred/detect.hpp"
#include "vred/mass.hpp"
#include "vred/stats.hpp"
#include "vred/storage.hpp"

namespace vred {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Availability series (long format). Values round-trip exactly: the writer
// emits shortest-round-trip decimals and the reader parses them back to the
// identical doubles.
// ---------------------------------------------------------------------------

inline void write_availability_csv(const std::filesystem::path& path, const series_map& series) {
    csv_writer w(path);
    w.raw_line("region,technology,hour_index,value");
    for (const auto& [key, s] : series)
        for (std::int64_t h = 0; h < s.n_hours(); ++h)
            w.row(key.region, key.technology, h, s.values[static_cast<size_t>(h)]);
}

inline void write_capacities_csv(const std::filesystem::path& path, const capacity_table& caps) {
    csv_writer w(path);
    w.raw_line("region,technology,capacity_mw");
    for (const auto& [key, mw] : caps.entries) w.row(key.region, key.technology, mw);
}

// ---------------------------------------------------------------------------
// Event catalogs: CSV and a JSON mirror with the same fields.
// ---------------------------------------------------------------------------

inline void write_catalog_csv(const std::filesystem::path& path, const event_catalog& catalog) {
    csv_writer w(path);
    w.raw_line("key,tau,start,duration,mean_availability,threshold_abs");
    for (const auto& ev : catalog.events)
        w.row(catalog.key, catalog.threshold_rel, ev.start, ev.duration, ev.mean_availability,
              ev.threshold_abs);
}

inline void write_catalog_json(const std::filesystem::path& path, const event_catalog& catalog) {
    json j;
    j["key"] = catalog.key;
    j["tau"] = catalog.threshold_rel;
    j["threshold_abs"] = catalog.threshold_abs;
    j["approximate_grid"] = catalog.approximate_grid;
    j["events"] = json::array();
    for (const auto& ev : catalog.events)
        j["events"].push_back({{"start", ev.start},
                               {"duration", ev.duration},
                               {"mean_availability", ev.mean_availability},
                               {"threshold_abs", ev.threshold_abs}});
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
}

inline event_catalog read_catalog_csv(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    csv_lines lines(text);
    std::string_view header;
    if (!lines.next(header) || header != "key,tau,start,duration,mean_availability,threshold_abs")
        throw schema_error(path.string() + ": not a catalog CSV");
    event_catalog catalog;
    std::string_view line;
    bool first = true;
    while (lines.next(line)) {
        const auto f = split_csv_line(line);
        if (f.size() != 6) throw schema_error(path.string() + ": bad catalog row");
        drought_event ev;
        double tau;
        if (!parse_double(f[1], tau) || !parse_int(f[2], ev.start) || !parse_int(f[3], ev.duration) ||
            !parse_double(f[4], ev.mean_availability) || !parse_double(f[5], ev.threshold_abs))
            throw schema_error(path.string() + ": bad catalog row");
        ev.threshold_rel = tau;
        if (first) {
            catalog.key = std::string(f[0]);
            catalog.threshold_rel = tau;
            catalog.threshold_abs = ev.threshold_abs;
            first = false;
        }
        catalog.events.push_back(ev);
    }
    return catalog;
}

// ---------------------------------------------------------------------------
// Derived statistic tables.
// ---------------------------------------------------------------------------

inline void write_frequency_csv(const std::filesystem::path& path,
                                const std::vector<frequency_curve>& curves) {
    csv_writer w(path);
    w.raw_line("key,tau,duration_h,freq_per_year");
    for (const auto& c : curves)
        for (const auto& p : c.points) w.row(c.key, c.tau, p.duration_h, p.per_year);
}

inline void write_maxdur_csv(const std::filesystem::path& path,
                             const std::vector<max_duration_table>& tables) {
    csv_writer w(path);
    w.raw_line("key,tau,group,duration_h");
    for (const auto& t : tables) {
        switch (t.group) {
            case max_duration_grouping::overall:
                w.row(t.key, t.tau, "overall", t.overall_max);
                break;
            case max_duration_grouping::per_year:
                for (const auto& [year, dur] : t.entries)
                    w.row(t.key, t.tau, "year:" + std::to_string(year), dur);
                break;
            case max_duration_grouping::per_month:
                for (const auto& [month, dur] : t.entries)
                    w.row(t.key, t.tau, "month:" + std::to_string(month), dur);
                break;
        }
    }
}

inline void write_effects_csv(const std::filesystem::path& path,
                              const std::vector<effect_table>& tables) {
    csv_writer w(path);
    w.raw_line("region,metric,tech,value_pct");
    for (const auto& t : tables) {
        for (const auto& row : t.rows)
            for (const auto& [tech, pct] : row.value_pct) w.row(row.region, t.metric, tech, pct);
        for (const auto& [tech, pct] : t.aggregate.value_pct)
            w.row(t.aggregate.region, t.metric, tech, pct);
    }
}

inline void write_mass_csv(const std::filesystem::path& path, const mass_report_table& report,
                           const std::vector<std::pair<std::string, std::vector<pair_events>>>& per_region) {
    csv_writer w(path);
    w.raw_line("region,pair,k,l,duration_h,score,season,is_row_max");
    auto season_str = [](season_class s) { return s == season_class::winter ? "winter" : "summer"; };
    for (size_t r = 0; r < per_region.size(); ++r) {
        const auto& [region, pairs] = per_region[r];
        const mass_row& row = report.rows[r];
        for (const auto& pe : pairs) {
            const auto top_all = top_event(pe, season_filter::all);
            if (!top_all) continue;
            const auto top_winter = top_event(pe, season_filter::winter);
            auto is_row_max = [&](const mass_event& ev) {
                return row.row_max && ev.pair_index == row.row_max->pair_index &&
                       ev.k == row.row_max->k && ev.season == row.row_max->season;
            };
            w.row(region, pe.label(), top_all->k, top_all->l, top_all->duration(), top_all->score,
                  season_str(top_all->season), is_row_max(*top_all) ? 1 : 0);
            // When the pair's top event falls in summer, also list the top
            // winter event so the winter ranking stays visible.
            if (top_all->season == season_class::summer && top_winter)
                w.row(region, pe.label(), top_winter->k, top_winter->l, top_winter->duration(),
                      top_winter->score, season_str(top_winter->season),
                      is_row_max(*top_winter) ? 1 : 0);
        }
    }
}

inline void write_storage_csv(
    const std::filesystem::path& path,
    const std::vector<std::tuple<std::string, std::string, drawdown_result>>& rows) {
    csv_writer w(path);
    w.raw_line("region,scenario,required_capacity,discharge_start,discharge_end");
    for (const auto& [region, scenario, result] : rows) {
        const std::int64_t lo = result.discharge_interval ? result.discharge_interval->first : -1;
        const std::int64_t hi = result.discharge_interval ? result.discharge_interval->second : -1;
        w.row(region, scenario, result.required_capacity, lo, hi);
    }
}

struct coincidence_row {
    std::string region;
    std::string scenario;
    std::string pair_label;
    std::int64_t event_start = 0;
    std::int64_t event_end = 0;
    overlap_metrics metrics;
};

inline void write_coincidence_csv(const std::filesystem::path& path,
                                  const std::vector<coincidence_row>& rows) {
    csv_writer w(path);
    w.raw_line("region,scenario,pair,event_start,event_end,intersection_h,containment,jaccard");
    for (const auto& r : rows)
        w.row(r.region, r.scenario, r.pair_label, r.event_start, r.event_end,
              r.metrics.intersection_hours, r.metrics.containment, r.metrics.jaccard);
}

}  // namespace vred
