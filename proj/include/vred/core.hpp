#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vred {

inline constexpr std::int64_t hours_per_year = 8760;

// ---------------------------------------------------------------------------
// Errors. Each carries the structured detail callers assert on.
// ---------------------------------------------------------------------------

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parameter_error : public error {
public:
    using error::error;
};

class io_error : public error {
public:
    using error::error;
};

class schema_error : public error {
public:
    using error::error;
};

/// A value outside its admissible range; `row` is the 1-based data row when
/// the violation came from a file, 0 otherwise.
class range_error : public error {
public:
    range_error(const std::string& msg, std::int64_t row = 0) : error(msg), row(row) {}
    std::int64_t row = 0;
};

/// Incomplete hourly coverage; `first_missing_hour` is the first gap.
class gap_error : public error {
public:
    gap_error(const std::string& msg, std::int64_t first_missing_hour)
        : error(msg), first_missing_hour(first_missing_hour) {}
    std::int64_t first_missing_hour = 0;
};

class duplicate_error : public error {
public:
    duplicate_error(const std::string& msg, std::int64_t hour) : error(msg), hour(hour) {}
    std::int64_t hour = 0;
};

/// Configuration problem; `field` names the offending config key.
class config_error : public error {
public:
    config_error(const std::string& field, const std::string& msg)
        : error(field + ": " + msg), field(field) {}
    std::string field;
};

// ---------------------------------------------------------------------------
// Calendar: fixed 365-day years, no leap days.
// ---------------------------------------------------------------------------

namespace detail {
// Cumulative day-of-year at the start of each month (Feb = 28 days).
inline constexpr std::array<int, 13> month_start_day = {
    0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334, 365};
}  // namespace detail

/// Hourly axis over whole no-leap years. Hour 0 is Jan 1 00:00 of start_year.
struct time_axis {
    int start_year = 0;
    std::int64_t n_hours = 0;

    time_axis() = default;
    time_axis(int start_year, std::int64_t n_hours) : start_year(start_year), n_hours(n_hours) {
        if (n_hours <= 0 || n_hours % hours_per_year != 0)
            throw parameter_error("time_axis: n_hours must be a positive multiple of 8760, got " +
                                  std::to_string(n_hours));
    }

    std::int64_t n_years() const { return n_hours / hours_per_year; }

    int year_of(std::int64_t hour) const {
        return start_year + static_cast<int>(hour / hours_per_year);
    }
    std::int64_t hour_of_year(std::int64_t hour) const { return hour % hours_per_year; }

    /// Month 1..12 of the given absolute hour.
    int month_of(std::int64_t hour) const {
        const int day = static_cast<int>(hour_of_year(hour) / 24);
        const auto& cum = detail::month_start_day;
        auto it = std::upper_bound(cum.begin(), cum.end(), day);
        return static_cast<int>(it - cum.begin());
    }

    std::int64_t hour_from(int year, std::int64_t hour_of_year) const {
        return static_cast<std::int64_t>(year - start_year) * hours_per_year + hour_of_year;
    }

    bool operator==(const time_axis&) const = default;
};

// ---------------------------------------------------------------------------
// Series identity and data model.
// ---------------------------------------------------------------------------

struct series_key {
    std::string region;
    std::string technology;

    std::string str() const { return region + "_" + technology; }
    auto operator<=>(const series_key&) const = default;
};

namespace detail {
/// Plain left-to-right accumulation. Every mean in the library goes through
/// this one function so that "recomputable" means bit-identical.
inline double sum(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

inline double mean(std::span<const double> v) {
    return v.empty() ? 0.0 : sum(v) / static_cast<double>(v.size());
}
}  // namespace detail

/// Hourly availability factors in [0,1] for one region-technology or composite.
struct availability_series {
    series_key key;
    time_axis axis;
    std::vector<double> values;
    double long_run_mean = 0.0;

    static availability_series make(series_key key, time_axis axis, std::vector<double> values) {
        if (static_cast<std::int64_t>(values.size()) != axis.n_hours)
            throw parameter_error("availability_series: " + key.str() + ": " +
                                  std::to_string(values.size()) + " values for axis of " +
                                  std::to_string(axis.n_hours) + " hours");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i] >= 0.0 && values[i] <= 1.0))
                throw range_error("availability_series: " + key.str() + ": value " +
                                      std::to_string(values[i]) + " at hour " + std::to_string(i) +
                                      " outside [0,1]",
                                  static_cast<std::int64_t>(i) + 1);
        }
        availability_series s;
        s.key = std::move(key);
        s.axis = axis;
        s.values = std::move(values);
        s.long_run_mean = detail::mean(s.values);
        return s;
    }

    std::int64_t n_hours() const { return axis.n_hours; }
};

using series_map = std::map<series_key, availability_series>;

/// Installed capacity in MW per (region, technology).
struct capacity_table {
    std::map<series_key, double> entries;

    void set(const series_key& key, double mw) {
        if (mw < 0.0)
            throw range_error("capacity_table: negative capacity " + std::to_string(mw) + " for " +
                              key.str());
        entries[key] = mw;
    }

    double get(const series_key& key) const {
        auto it = entries.find(key);
        return it == entries.end() ? 0.0 : it->second;
    }

    std::vector<std::string> regions() const {
        std::vector<std::string> out;
        for (const auto& [k, _] : entries)
            if (out.empty() || out.back() != k.region) out.push_back(k.region);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

}  // namespace vred
