#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vred/core.hpp"
#include "vred/detect.hpp"

namespace vred {

// ---------------------------------------------------------------------------
// Cumulative frequency-duration distribution: how many events of at least a
// given duration occurred on average per year. Counts and the year total are
// kept as integers; the per-year rate and the return period are the derived
// rationals count/years and years/count.
// ---------------------------------------------------------------------------

struct frequency_point {
    std::int64_t duration_h = 0;
    std::int64_t count = 0;  // events with duration >= duration_h
    double per_year = 0.0;   // count / years
};

struct frequency_curve {
    std::string key;
    double tau = 0.0;
    std::int64_t years = 0;
    std::vector<frequency_point> points;  // ascending duration

    /// Events-per-year rate at an arbitrary duration query.
    double at(std::int64_t duration_h) const {
        auto it = std::lower_bound(points.begin(), points.end(), duration_h,
                                   [](const frequency_point& p, std::int64_t d) {
                                       return p.duration_h < d;
                                   });
        return it == points.end() ? 0.0 : it->per_year;
    }
};

/// Fixed query ladder added to the observed durations: one day, two days, one
/// week, two weeks, one month.
inline const std::vector<std::int64_t>& frequency_query_ladder() {
    static const std::vector<std::int64_t> ladder = {24, 48, 168, 336, 720};
    return ladder;
}

inline frequency_curve frequency_duration(const event_catalog& catalog, std::int64_t years) {
    if (years < 1) throw parameter_error("frequency_duration: years must be >= 1");
    frequency_curve curve;
    curve.key = catalog.key;
    curve.tau = catalog.threshold_rel;
    curve.years = years;

    std::set<std::int64_t> queries(frequency_query_ladder().begin(), frequency_query_ladder().end());
    std::vector<std::int64_t> durations;
    durations.reserve(catalog.events.size());
    for (const auto& ev : catalog.events) {
        durations.push_back(ev.duration);
        queries.insert(ev.duration);
    }
    std::sort(durations.begin(), durations.end());

    for (std::int64_t d : queries) {
        // count of events with duration >= d
        auto it = std::lower_bound(durations.begin(), durations.end(), d);
        const auto count = static_cast<std::int64_t>(durations.end() - it);
        curve.points.push_back({d, count, static_cast<double>(count) / static_cast<double>(years)});
    }
    return curve;
}

struct return_point {
    std::int64_t duration_h = 0;
    std::int64_t count = 0;  // the rational period is years/count
    std::int64_t years = 0;
    double period_years = 0.0;
};

/// Return periods are the reciprocals of yearly frequencies. Points with a
/// frequency of at least one per year are omitted; a zero frequency has no
/// finite period. The period cannot exceed the record length (count >= 1).
inline std::vector<return_point> return_period(const frequency_curve& curve) {
    std::vector<return_point> out;
    for (const auto& p : curve.points) {
        if (p.count < 1 || p.count >= curve.years) continue;  // 0 < frequency < 1 only
        const double period = std::min(static_cast<double>(curve.years) / static_cast<double>(p.count),
                                       static_cast<double>(curve.years));
        out.push_back({p.duration_h, p.count, curve.years, period});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Maximum drought durations, grouped by the calendar year or month containing
// each event's median hour (the hour at start + duration/2).
// ---------------------------------------------------------------------------

inline std::int64_t median_hour(const drought_event& ev) { return ev.start + ev.duration / 2; }

enum class max_duration_grouping { overall, per_year, per_month };

struct max_duration_table {
    std::string key;
    double tau = 0.0;
    max_duration_grouping group = max_duration_grouping::overall;
    // per_year: year -> longest duration (every record year present, 0 if none);
    // per_month: month 1..12 -> longest duration.
    std::map<int, std::int64_t> entries;
    std::int64_t overall_max = 0;
    int overall_year = 0;  // year of the longest event's median hour
};

inline max_duration_table max_durations(const event_catalog& catalog, const time_axis& axis,
                                        max_duration_grouping group) {
    max_duration_table table;
    table.key = catalog.key;
    table.tau = catalog.threshold_rel;
    table.group = group;

    if (group == max_duration_grouping::per_year) {
        for (int y = axis.start_year; y < axis.start_year + axis.n_years(); ++y)
            table.entries[y] = 0;
    } else if (group == max_duration_grouping::per_month) {
        for (int m = 1; m <= 12; ++m) table.entries[m] = 0;
    }

    for (const auto& ev : catalog.events) {
        const std::int64_t med = median_hour(ev);
        if (ev.duration > table.overall_max) {
            table.overall_max = ev.duration;
            table.overall_year = axis.year_of(med);
        }
        if (group == max_duration_grouping::per_year) {
            auto& slot = table.entries[axis.year_of(med)];
            slot = std::max(slot, ev.duration);
        } else if (group == max_duration_grouping::per_month) {
            auto& slot = table.entries[axis.month_of(med)];
            slot = std::max(slot, ev.duration);
        }
    }
    if (catalog.events.empty() && group == max_duration_grouping::overall) table.entries.clear();
    return table;
}

// ---------------------------------------------------------------------------
// Portfolio and balancing effects: mean percent change of the maximum drought
// duration, averaged (unweighted) over the threshold grid, then aggregated
// across regions weighted by generation potential.
// ---------------------------------------------------------------------------

/// Maximum event duration per threshold of a sweep.
inline std::map<double, std::int64_t> max_duration_by_tau(const sweep_result& sweeps) {
    std::map<double, std::int64_t> out;
    for (const auto& [tau, catalog] : sweeps) {
        std::int64_t mx = 0;
        for (const auto& ev : catalog.events) mx = std::max(mx, ev.duration);
        out[tau] = mx;
    }
    return out;
}

/// Mean over thresholds of 100 * (alternative - reference) / reference, using
/// only thresholds where the reference has any event. Empty when none has.
inline std::optional<double> effect_pct(const std::map<double, std::int64_t>& reference,
                                        const std::map<double, std::int64_t>& alternative) {
    double sum = 0.0;
    int n = 0;
    for (const auto& [tau, ref_max] : reference) {
        if (ref_max <= 0) continue;
        auto it = alternative.find(tau);
        if (it == alternative.end()) continue;
        sum += 100.0 * (static_cast<double>(it->second - ref_max) / static_cast<double>(ref_max));
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

struct effect_row {
    std::string region;
    std::map<std::string, double> value_pct;  // column (technology or "portfolio") -> percent
    double weight = 0.0;                      // generation potential
};

struct effect_table {
    std::string metric;  // "portfolio" or "balancing"
    std::vector<effect_row> rows;
    effect_row aggregate;
};

/// Portfolio effect row: the region's portfolio sweep against each single
/// technology. Technologies without a sweep stay blank.
inline effect_row portfolio_effect(const std::string& region,
                                   const std::map<std::string, sweep_result>& tech_sweeps,
                                   const sweep_result& portfolio_sweep) {
    effect_row row;
    row.region = region;
    const auto portfolio_max = max_duration_by_tau(portfolio_sweep);
    for (const auto& [tech, sweeps] : tech_sweeps) {
        if (auto pct = effect_pct(max_duration_by_tau(sweeps), portfolio_max))
            row.value_pct[tech] = *pct;
    }
    return row;
}

/// Balancing effect row: the copperplate sweep against the isolated region,
/// per technology and for the portfolio.
inline effect_row balancing_effect(const std::string& region,
                                   const std::map<std::string, sweep_result>& region_sweeps,
                                   const std::map<std::string, sweep_result>& copperplate_sweeps) {
    effect_row row;
    row.region = region;
    for (const auto& [tech, sweeps] : region_sweeps) {
        auto it = copperplate_sweeps.find(tech);
        if (it == copperplate_sweeps.end()) continue;
        if (auto pct = effect_pct(max_duration_by_tau(sweeps), max_duration_by_tau(it->second)))
            row.value_pct[tech] = *pct;
    }
    return row;
}

/// Weighted mean per column over the rows that carry the column.
inline effect_row aggregate_effects(const std::vector<effect_row>& rows) {
    double total_weight = 0.0;
    for (const auto& r : rows) {
        if (r.weight < 0.0) throw parameter_error("aggregate_effects: negative weight");
        total_weight += r.weight;
    }
    if (total_weight <= 0.0) throw parameter_error("aggregate_effects: all weights are zero");

    effect_row agg;
    agg.region = "AVERAGE";
    std::map<std::string, std::pair<double, double>> acc;  // column -> (sum w*x, sum w)
    for (const auto& r : rows)
        for (const auto& [col, x] : r.value_pct) {
            acc[col].first += r.weight * x;
            acc[col].second += r.weight;
        }
    for (const auto& [col, sw] : acc)
        if (sw.second > 0.0) agg.value_pct[col] = sw.first / sw.second;
    agg.weight = total_weight;
    return agg;
}

}  // namespace vred
