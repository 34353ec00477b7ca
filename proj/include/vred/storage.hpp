#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vred/core.hpp"
#include "vred/mass.hpp"

namespace vred {

// ---------------------------------------------------------------------------
// Idealized lossless-reservoir proxy: size generation so the record is energy
// balanced, integrate net generation, and find the largest drawdown of the
// running level. The drawdown interval stands in for the main long-duration
// storage discharge period.
// ---------------------------------------------------------------------------

struct demand_profile {
    std::vector<double> values;  // energy per hour, >= 0

    static demand_profile flat(std::int64_t n_hours, double level = 1.0) {
        if (level < 0.0) throw parameter_error("demand_profile: negative level");
        demand_profile d;
        d.values.assign(static_cast<size_t>(n_hours), level);
        return d;
    }

    void validate() const {
        for (double v : values)
            if (v < 0.0) throw parameter_error("demand_profile: negative demand value");
    }
};

struct net_result {
    double capacity = 0.0;     // generation capacity C with C * sum(a) = (1+margin) * sum(d)
    std::vector<double> net;   // C * a(t) - d(t), charging side scaled by efficiency
};

/// Hourly net generation under a capacity sized for record-level energy
/// balance (margin 0) or a configurable surplus. An optional round-trip
/// efficiency < 1 shrinks the charging (positive) side.
inline net_result net_series(const availability_series& availability, const demand_profile& demand,
                             double margin = 0.0, double efficiency = 1.0) {
    if (demand.values.size() != availability.values.size())
        throw parameter_error("net_series: demand and availability axes differ");
    demand.validate();
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw parameter_error("net_series: efficiency outside (0, 1]");
    const double sum_a = detail::sum(availability.values);
    if (sum_a <= 0.0) throw parameter_error("net_series: zero total availability");
    const double sum_d = detail::sum(demand.values);

    net_result r;
    r.capacity = (1.0 + margin) * sum_d / sum_a;
    r.net.resize(availability.values.size());
    for (size_t t = 0; t < r.net.size(); ++t) {
        const double x = r.capacity * availability.values[t] - demand.values[t];
        r.net[t] = x > 0.0 ? efficiency * x : x;
    }
    return r;
}

struct drawdown_result {
    double required_capacity = 0.0;  // max over t1 < t2 of level(t1) - level(t2), floored at 0
    std::optional<std::pair<std::int64_t, std::int64_t>> discharge_interval;  // (t1, t2)
    std::vector<double> level;       // running sums of net
};

namespace detail {

/// Largest peak-to-trough decline of a level trajectory in one pass. Ties
/// resolve to the earliest t1, then the largest t2.
inline drawdown_result drawdown_from_levels(std::vector<double> level) {
    drawdown_result r;
    r.level = std::move(level);
    if (r.level.empty()) return r;

    double peak = r.level[0];
    std::int64_t peak_at = 0;
    double best = 0.0;
    std::optional<std::pair<std::int64_t, std::int64_t>> best_interval;
    for (std::int64_t t = 1; t < static_cast<std::int64_t>(r.level.size()); ++t) {
        const double dd = peak - r.level[static_cast<size_t>(t)];
        if (dd > best ||
            (dd == best && best_interval &&
             (peak_at < best_interval->first ||
              (peak_at == best_interval->first && t > best_interval->second)))) {
            best = dd;
            best_interval = {peak_at, t};
        }
        if (r.level[static_cast<size_t>(t)] > peak) {  // strict: keep the earliest peak on ties
            peak = r.level[static_cast<size_t>(t)];
            peak_at = t;
        }
    }
    if (best > 0.0) {
        r.required_capacity = best;
        r.discharge_interval = best_interval;
    }
    return r;
}

}  // namespace detail

inline drawdown_result max_drawdown(std::span<const double> net) {
    std::vector<double> level(net.size());
    double acc = 0.0;
    for (size_t t = 0; t < net.size(); ++t) {
        acc += net[t];
        level[t] = acc;
    }
    return detail::drawdown_from_levels(std::move(level));
}

// ---------------------------------------------------------------------------
// Overlap between the discharge interval and a drought event, both treated as
// inclusive hour ranges.
// ---------------------------------------------------------------------------

struct overlap_metrics {
    std::int64_t intersection_hours = 0;
    double containment = 0.0;  // intersection / event duration
    double jaccard = 0.0;
};

inline overlap_metrics interval_overlap(std::int64_t a_lo, std::int64_t a_hi, std::int64_t b_lo,
                                        std::int64_t b_hi) {
    overlap_metrics m;
    const std::int64_t lo = std::max(a_lo, b_lo);
    const std::int64_t hi = std::min(a_hi, b_hi);
    m.intersection_hours = std::max<std::int64_t>(0, hi - lo + 1);
    const std::int64_t a_len = a_hi - a_lo + 1;
    const std::int64_t union_len = a_len + (b_hi - b_lo + 1) - m.intersection_hours;
    if (a_len > 0) m.containment = static_cast<double>(m.intersection_hours) / static_cast<double>(a_len);
    if (union_len > 0) m.jaccard = static_cast<double>(m.intersection_hours) / static_cast<double>(union_len);
    return m;
}

/// Overlap of a drought-mass event with the maximum-drawdown discharge
/// interval; all zeros when no drawdown exists.
inline overlap_metrics coincidence(const drawdown_result& result, const mass_event& event) {
    if (!result.discharge_interval) return {};
    return interval_overlap(event.abs_start(), event.abs_end(), result.discharge_interval->first,
                            result.discharge_interval->second);
}

}  // namespace vred
