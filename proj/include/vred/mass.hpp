#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vred/core.hpp"
#include "vred/detect.hpp"
#include "vred/stats.hpp"

namespace vred {

// ---------------------------------------------------------------------------
// Multi-threshold drought mass: rank contiguous cut-off events inside
// consecutive year-pairs by the total number of drought hours they contain
// across all included thresholds.
// ---------------------------------------------------------------------------

/// Per-threshold binary hour flags derived from an event catalog.
struct drought_calendar {
    std::string key;
    double tau = 0.0;
    std::vector<std::uint8_t> flags;  // full axis, 1 = hour inside an event

    std::int64_t total_flagged() const {
        std::int64_t n = 0;
        for (auto f : flags) n += f;
        return n;
    }
};

struct mass_config {
    double cutoff = 0.75;          // defines event extent; also the highest included threshold
    std::vector<double> included;  // thresholds contributing to the score, cutoff inclusive
    std::int64_t pair_hours = 2 * hours_per_year;
    std::set<int> excluded_months = {5, 6, 7, 8, 9};  // May..September are not winter
    std::vector<double> weights;   // optional per-threshold weights; empty = equal

    static mass_config defaults() {
        mass_config cfg;
        for (int pct = 10; pct <= 75; pct += 5) cfg.included.push_back(pct / 100.0);
        return cfg;
    }

    void validate() const {
        if (included.empty()) throw parameter_error("mass_config: no included thresholds");
        bool has_cutoff = false;
        for (double t : included) has_cutoff |= t == cutoff;
        if (!has_cutoff)
            throw parameter_error("mass_config: cutoff " + std::to_string(cutoff) +
                                  " not among included thresholds");
        if (!weights.empty() && weights.size() != included.size())
            throw parameter_error("mass_config: weights size differs from included thresholds");
    }
};

enum class season_class { winter, summer };

/// One scored extreme event inside a year-pair window. k and l are hours
/// relative to the pair window start.
struct mass_event {
    int pair_index = 0;
    int start_year = 0;             // first year of the pair
    std::int64_t pair_start = 0;    // absolute hour of the pair window start
    std::int64_t k = 0;
    std::int64_t l = 0;
    std::int64_t score = 0;         // total drought hours over included thresholds
    double weighted_score = 0.0;    // equals score under equal weighting
    season_class season = season_class::winter;

    std::int64_t duration() const { return l - k + 1; }
    std::int64_t abs_start() const { return pair_start + k; }
    std::int64_t abs_end() const { return pair_start + l; }
    std::int64_t abs_median() const { return abs_start() + duration() / 2; }

    std::string pair_label() const {
        return std::to_string(start_year) + "/" + std::to_string(start_year + 1);
    }
};

/// Binary drought calendars over the full record for every included
/// threshold, derived from a single full-record sweep.
inline std::map<double, drought_calendar> build_calendars(const sweep_result& sweeps,
                                                          const time_axis& axis,
                                                          const mass_config& cfg) {
    cfg.validate();
    std::map<double, drought_calendar> out;
    for (double tau : cfg.included) {
        auto it = sweeps.find(tau);
        if (it == sweeps.end())
            throw parameter_error("build_calendars: sweep is missing tau " + std::to_string(tau));
        drought_calendar cal;
        cal.key = it->second.key;
        cal.tau = tau;
        cal.flags.assign(static_cast<size_t>(axis.n_hours), 0);
        for (const auto& ev : it->second.events) {
            for (std::int64_t h = ev.start; h <= ev.end(); ++h)
                cal.flags[static_cast<size_t>(h)] = 1;
        }
        out.emplace(tau, std::move(cal));
    }
    return out;
}

struct pair_events {
    int pair_index = 0;
    int start_year = 0;
    std::int64_t pair_start = 0;
    std::vector<mass_event> events;

    std::string label() const {
        return std::to_string(start_year) + "/" + std::to_string(start_year + 1);
    }
};

/// Scores every maximal contiguous cut-off run inside each consecutive
/// year-pair window. Runs crossing a pair boundary are clipped to the window;
/// the overlap of consecutive pairs shows every winter unclipped in at least
/// one of them.
inline std::vector<pair_events> score_pairs(const std::map<double, drought_calendar>& calendars,
                                            const time_axis& axis, const mass_config& cfg) {
    cfg.validate();
    if (axis.n_years() < 2) throw parameter_error("score_pairs: record shorter than one year-pair");
    const auto& cutoff_cal = calendars.at(cfg.cutoff);

    // Flag-count prefix per threshold for O(1) interval sums.
    std::map<double, std::vector<std::int64_t>> prefix;
    for (const auto& [tau, cal] : calendars) {
        auto& p = prefix[tau];
        p.assign(cal.flags.size() + 1, 0);
        for (size_t i = 0; i < cal.flags.size(); ++i) p[i + 1] = p[i] + cal.flags[i];
    }

    std::vector<pair_events> out;
    const int n_pairs = static_cast<int>(axis.n_years()) - 1;
    for (int p = 0; p < n_pairs; ++p) {
        pair_events pe;
        pe.pair_index = p;
        pe.start_year = axis.start_year + p;
        pe.pair_start = static_cast<std::int64_t>(p) * hours_per_year;
        const std::int64_t win_lo = pe.pair_start;
        const std::int64_t win_hi = std::min(pe.pair_start + cfg.pair_hours, axis.n_hours) - 1;

        std::int64_t h = win_lo;
        while (h <= win_hi) {
            if (!cutoff_cal.flags[static_cast<size_t>(h)]) {
                ++h;
                continue;
            }
            std::int64_t run_end = h;
            while (run_end + 1 <= win_hi && cutoff_cal.flags[static_cast<size_t>(run_end) + 1])
                ++run_end;

            mass_event ev;
            ev.pair_index = p;
            ev.start_year = pe.start_year;
            ev.pair_start = pe.pair_start;
            ev.k = h - win_lo;
            ev.l = run_end - win_lo;
            for (size_t ti = 0; ti < cfg.included.size(); ++ti) {
                const double tau = cfg.included[ti];
                const auto& pf = prefix.at(tau);
                const std::int64_t hours =
                    pf[static_cast<size_t>(run_end) + 1] - pf[static_cast<size_t>(h)];
                ev.score += hours;
                ev.weighted_score +=
                    (cfg.weights.empty() ? 1.0 : cfg.weights[ti]) * static_cast<double>(hours);
            }
            const int month = axis.month_of(ev.abs_median());
            ev.season = cfg.excluded_months.contains(month) ? season_class::summer
                                                            : season_class::winter;
            pe.events.push_back(ev);
            h = run_end + 1;
        }
        out.push_back(std::move(pe));
    }
    return out;
}

enum class season_filter { all, winter };

/// Highest-scoring event of a pair, optionally restricted to winter events.
/// Ties break toward the longer event, then the earlier start.
inline std::optional<mass_event> top_event(const pair_events& pe, season_filter filter) {
    std::optional<mass_event> best;
    for (const auto& ev : pe.events) {
        if (filter == season_filter::winter && ev.season != season_class::winter) continue;
        if (!best || ev.weighted_score > best->weighted_score ||
            (ev.weighted_score == best->weighted_score &&
             (ev.duration() > best->duration() ||
              (ev.duration() == best->duration() && ev.k < best->k))))
            best = ev;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Cross-region report: per region the winter top event of every pair, scores
// normalized by the row maximum; the duration of each row's maximum event
// normalized by the largest such duration across regions.
// ---------------------------------------------------------------------------

struct mass_row {
    std::string region;
    std::vector<std::optional<mass_event>> top_winter;  // one entry per pair
    std::vector<double> norm_score;                     // score / row max (0 when absent)
    std::optional<mass_event> row_max;
    double norm_duration = 0.0;  // row-max duration / max across regions
};

struct mass_report_table {
    std::vector<std::string> pair_labels;
    std::vector<mass_row> rows;
};

inline mass_report_table mass_report(
    const std::vector<std::pair<std::string, std::vector<pair_events>>>& per_region) {
    mass_report_table table;
    if (per_region.empty()) return table;
    for (const auto& pe : per_region.front().second) table.pair_labels.push_back(pe.label());

    for (const auto& [region, pairs] : per_region) {
        mass_row row;
        row.region = region;
        std::int64_t row_max_score = 0;
        for (const auto& pe : pairs) {
            auto ev = top_event(pe, season_filter::winter);
            if (ev) {
                row_max_score = std::max(row_max_score, ev->score);
                if (!row.row_max || ev->score > row.row_max->score ||
                    (ev->score == row.row_max->score && ev->duration() > row.row_max->duration()))
                    row.row_max = ev;
            }
            row.top_winter.push_back(std::move(ev));
        }
        for (const auto& ev : row.top_winter)
            row.norm_score.push_back(
                ev && row_max_score > 0
                    ? static_cast<double>(ev->score) / static_cast<double>(row_max_score)
                    : 0.0);
        table.rows.push_back(std::move(row));
    }

    std::int64_t max_duration = 0;
    for (const auto& row : table.rows)
        if (row.row_max) max_duration = std::max(max_duration, row.row_max->duration());
    for (auto& row : table.rows)
        if (row.row_max && max_duration > 0)
            row.norm_duration =
                static_cast<double>(row.row_max->duration()) / static_cast<double>(max_duration);
    return table;
}

}  // namespace vred
