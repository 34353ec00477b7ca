#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vred/core.hpp"

namespace vred {

/// A capacity-weighted combination of member series. Weights are the member
/// capacities normalized to sum to 1.
struct composite_spec {
    std::string label;
    std::vector<std::pair<series_key, double>> members;  // (key, normalized weight)
};

namespace detail {

inline composite_spec make_composite_spec(std::string label, const series_map& series,
                                          const capacity_table& caps,
                                          const std::optional<std::string>& region_filter,
                                          const std::optional<std::string>& technology_filter) {
    composite_spec spec;
    spec.label = std::move(label);
    double total = 0.0;
    for (const auto& [key, mw] : caps.entries) {
        if (region_filter && key.region != *region_filter) continue;
        if (technology_filter && key.technology != *technology_filter) continue;
        if (mw <= 0.0) continue;  // zero-capacity members drop out silently
        if (!series.contains(key))
            throw parameter_error("composite " + spec.label + ": no series for " + key.str() +
                                  " (capacity " + std::to_string(mw) + " MW)");
        spec.members.emplace_back(key, mw);
        total += mw;
    }
    if (spec.members.empty() || total <= 0.0)
        throw parameter_error("composite " + spec.label + ": no members with positive capacity");
    for (auto& [key, w] : spec.members) w /= total;
    return spec;
}

inline availability_series compose(const composite_spec& spec, const series_key& out_key,
                                   const series_map& series) {
    const availability_series& first = series.at(spec.members.front().first);
    const time_axis axis = first.axis;
    for (const auto& [key, _] : spec.members)
        if (!(series.at(key).axis == axis))
            throw parameter_error("composite " + spec.label + ": member " + key.str() +
                                  " has a different time axis");
    std::vector<double> values(static_cast<size_t>(axis.n_hours), 0.0);
    for (const auto& [key, w] : spec.members) {
        const auto& v = series.at(key).values;
        for (size_t h = 0; h < values.size(); ++h) values[h] += w * v[h];
    }
    // Weighted means of [0,1] values can exceed the bounds by rounding dust only.
    for (auto& v : values) v = std::clamp(v, 0.0, 1.0);
    return availability_series::make(out_key, axis, std::move(values));
}

}  // namespace detail

/// Capacity-weighted technology portfolio of one region.
inline availability_series build_portfolio(const std::string& region, const series_map& series,
                                           const capacity_table& caps) {
    auto spec = detail::make_composite_spec(region + "_portfolio", series, caps, region, std::nullopt);
    return detail::compose(spec, {region, "portfolio"}, series);
}

/// Pan-regional composite over all members (optionally one technology only),
/// treating all regions as a single perfectly interconnected node.
inline availability_series build_copperplate(const series_map& series, const capacity_table& caps,
                                             std::optional<std::string> technology_filter = {}) {
    const std::string tech = technology_filter.value_or("portfolio");
    auto spec = detail::make_composite_spec("CP_" + tech, series, caps, std::nullopt, technology_filter);
    return detail::compose(spec, {"CP", tech}, series);
}

/// Theoretical generation potential of a region over the record:
/// sum of capacity * long-run mean availability * record hours, in MWh.
/// Used as the weight when averaging effects across regions.
inline double generation_potential(const std::string& region, const series_map& series,
                                   const capacity_table& caps) {
    double total = 0.0;
    for (const auto& [key, mw] : caps.entries) {
        if (key.region != region || mw <= 0.0) continue;
        auto it = series.find(key);
        if (it == series.end())
            throw parameter_error("generation_potential: no series for " + key.str());
        total += mw * it->second.long_run_mean * static_cast<double>(it->second.n_hours());
    }
    return total;
}

}  // namespace vred
