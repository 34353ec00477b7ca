#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "vred/core.hpp"
#include "vred/csv.hpp"

namespace vred {

/// Column naming and calendar conventions for availability input.
struct csv_schema {
    int start_year = 1982;
    std::string region_col = "region";
    std::string technology_col = "technology";
    std::string hour_col = "hour_index";
    std::string value_col = "value";
    std::vector<std::string> technologies = {"pv", "onshore", "offshore"};

    bool technology_allowed(std::string_view t) const {
        for (const auto& w : technologies)
            if (w == t) return true;
        return false;
    }
};

namespace detail {

struct raw_point {
    std::int64_t hour;
    double value;
    std::int64_t row;  // 1-based data row for error reporting
};

inline availability_series finish_series(const series_key& key, int start_year,
                                         std::vector<raw_point>& pts) {
    std::stable_sort(pts.begin(), pts.end(),
                     [](const raw_point& a, const raw_point& b) { return a.hour < b.hour; });
    // Contiguity: hours must be exactly 0..N-1 with N a whole number of years.
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto expect = static_cast<std::int64_t>(i);
        if (pts[i].hour == expect) continue;
        if (pts[i].hour < expect || (i > 0 && pts[i].hour == pts[i - 1].hour))
            throw duplicate_error(key.str() + ": duplicate hour " + std::to_string(pts[i].hour) +
                                      " (row " + std::to_string(pts[i].row) + ")",
                                  pts[i].hour);
        throw gap_error(key.str() + ": missing hour " + std::to_string(expect), expect);
    }
    const auto n = static_cast<std::int64_t>(pts.size());
    if (n == 0 || n % hours_per_year != 0) {
        // Coverage must complete the started year: first gap is the next hour.
        const std::int64_t required = (n / hours_per_year + 1) * hours_per_year;
        throw gap_error(key.str() + ": incomplete coverage, " + std::to_string(n) + " of " +
                            std::to_string(required) + " hours, missing hour " + std::to_string(n),
                        n);
    }
    std::vector<double> values(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) values[i] = pts[i].value;
    return availability_series::make(key, time_axis(start_year, n), std::move(values));
}

inline void check_value(double v, const std::string& what, std::int64_t row) {
    if (!(v >= 0.0 && v <= 1.0))
        throw range_error(what + ": value " + format_double(v) + " outside [0,1] at row " +
                              std::to_string(row),
                          row);
}

inline series_key split_wide_key(std::string_view col) {
    size_t pos = col.rfind('_');
    if (pos == std::string_view::npos || pos == 0 || pos + 1 == col.size())
        throw schema_error("wide column '" + std::string(col) +
                           "' is not of the form <region>_<technology>");
    return {std::string(col.substr(0, pos)), std::string(col.substr(pos + 1))};
}

}  // namespace detail

/// Loads hourly availability factors. Two layouts are accepted:
///   long: header `region,technology,hour_index,value`, one row per hour;
///   wide: header `hour_index,<region>_<tech>,...`, one column per series.
/// Gzip-compressed files are detected by the `.gz` extension.
inline series_map load_availability(const std::filesystem::path& path, const csv_schema& schema = {}) {
    const std::string text = read_file(path);
    csv_lines lines(text);
    std::string_view header;
    if (!lines.next(header)) throw schema_error(path.string() + ": empty file");
    const auto cols = split_csv_line(header);

    std::map<series_key, std::vector<detail::raw_point>> raw;
    std::int64_t data_row = 0;

    const bool is_long = cols.size() == 4 && cols[0] == schema.region_col &&
                         cols[1] == schema.technology_col && cols[2] == schema.hour_col &&
                         cols[3] == schema.value_col;
    if (is_long) {
        std::string_view line;
        series_key cur_key;  // cache: input is usually grouped by key
        std::vector<detail::raw_point>* cur = nullptr;
        while (lines.next(line)) {
            ++data_row;
            const auto f = split_csv_line(line);
            if (f.size() != 4)
                throw schema_error(path.string() + ": expected 4 fields at row " +
                                   std::to_string(data_row));
            std::int64_t hour;
            double value;
            if (!parse_int(f[2], hour) || hour < 0)
                throw schema_error(path.string() + ": bad hour_index '" + std::string(f[2]) +
                                   "' at row " + std::to_string(data_row));
            if (!parse_double(f[3], value))
                throw schema_error(path.string() + ": bad value '" + std::string(f[3]) +
                                   "' at row " + std::to_string(data_row));
            detail::check_value(value, path.string(), data_row);
            if (!schema.technology_allowed(f[1]))
                throw schema_error(path.string() + ": unknown technology '" + std::string(f[1]) +
                                   "' at row " + std::to_string(data_row));
            if (cur == nullptr || cur_key.region != f[0] || cur_key.technology != f[1]) {
                cur_key = {std::string(f[0]), std::string(f[1])};
                cur = &raw[cur_key];
            }
            cur->push_back({hour, value, data_row});
        }
    } else if (!cols.empty() && cols[0] == schema.hour_col) {
        std::vector<series_key> keys;
        for (size_t c = 1; c < cols.size(); ++c) {
            auto key = detail::split_wide_key(cols[c]);
            if (!schema.technology_allowed(key.technology))
                throw schema_error(path.string() + ": unknown technology in column '" +
                                   std::string(cols[c]) + "'");
            keys.push_back(std::move(key));
        }
        std::string_view line;
        while (lines.next(line)) {
            ++data_row;
            const auto f = split_csv_line(line);
            if (f.size() != cols.size())
                throw schema_error(path.string() + ": expected " + std::to_string(cols.size()) +
                                   " fields at row " + std::to_string(data_row));
            std::int64_t hour;
            if (!parse_int(f[0], hour) || hour < 0)
                throw schema_error(path.string() + ": bad hour_index at row " +
                                   std::to_string(data_row));
            for (size_t c = 1; c < f.size(); ++c) {
                double value;
                if (!parse_double(f[c], value))
                    throw schema_error(path.string() + ": bad value at row " +
                                       std::to_string(data_row));
                detail::check_value(value, path.string(), data_row);
                raw[keys[c - 1]].push_back({hour, value, data_row});
            }
        }
    } else {
        throw schema_error(path.string() + ": unrecognized header '" + std::string(header) + "'");
    }

    series_map out;
    for (auto& [key, pts] : raw) out.emplace(key, detail::finish_series(key, schema.start_year, pts));
    if (out.empty()) throw schema_error(path.string() + ": no data rows");
    return out;
}

/// Loads installed capacities from a `region,technology,capacity_mw` CSV.
inline capacity_table load_capacities(const std::filesystem::path& path,
                                      const csv_schema& schema = {}) {
    const std::string text = read_file(path);
    csv_lines lines(text);
    std::string_view header;
    if (!lines.next(header)) throw schema_error(path.string() + ": empty file");
    const auto cols = split_csv_line(header);
    if (cols.size() != 3 || cols[0] != schema.region_col || cols[1] != schema.technology_col ||
        cols[2] != "capacity_mw")
        throw schema_error(path.string() + ": expected header region,technology,capacity_mw");

    capacity_table table;
    std::string_view line;
    std::int64_t data_row = 0;
    while (lines.next(line)) {
        ++data_row;
        const auto f = split_csv_line(line);
        if (f.size() != 3)
            throw schema_error(path.string() + ": expected 3 fields at row " +
                               std::to_string(data_row));
        if (!schema.technology_allowed(f[1]))
            throw schema_error(path.string() + ": unknown technology '" + std::string(f[1]) +
                               "' at row " + std::to_string(data_row));
        double mw;
        if (!parse_double(f[2], mw))
            throw schema_error(path.string() + ": bad capacity at row " + std::to_string(data_row));
        if (mw < 0.0)
            throw range_error(path.string() + ": negative capacity " + format_double(mw) +
                                  " at row " + std::to_string(data_row),
                              data_row);
        table.set({std::string(f[0]), std::string(f[1])}, mw);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Bundle validation (report-only).
// ---------------------------------------------------------------------------

enum class finding_kind {
    capacity_without_series,
    series_without_capacity,
    axis_mismatch,
};

struct validation_finding {
    finding_kind kind;
    std::string message;
};

struct validation_report {
    std::vector<validation_finding> findings;
    bool ok() const { return findings.empty(); }
};

inline validation_report validate_bundle(const series_map& series, const capacity_table& caps) {
    validation_report report;
    for (const auto& [key, mw] : caps.entries) {
        if (mw > 0.0 && !series.contains(key))
            report.findings.push_back({finding_kind::capacity_without_series,
                                       "capacity for " + key.str() + " has no series"});
    }
    for (const auto& [key, s] : series) {
        if (caps.get(key) == 0.0)
            report.findings.push_back({finding_kind::series_without_capacity,
                                       "series " + key.str() + " has no (positive) capacity"});
    }
    if (!series.empty()) {
        const time_axis& ref = series.begin()->second.axis;
        for (const auto& [key, s] : series) {
            if (!(s.axis == ref))
                report.findings.push_back(
                    {finding_kind::axis_mismatch,
                     "series " + key.str() + " axis (" + std::to_string(s.axis.n_hours) +
                         " h from " + std::to_string(s.axis.start_year) + ") differs from " +
                         series.begin()->first.str() + " (" + std::to_string(ref.n_hours) +
                         " h from " + std::to_string(ref.start_year) + ")"});
        }
    }
    return report;
}

}  // namespace vred
