#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "vred/core.hpp"
#include "vred/parallel.hpp"

namespace vred {

// ---------------------------------------------------------------------------
// Grids.
// ---------------------------------------------------------------------------

/// Relative drought thresholds, as fractions of the series' long-run mean.
struct threshold_grid {
    std::vector<double> levels;  // strictly increasing, each in (0, 1]

    static threshold_grid default_grid() {
        threshold_grid g;
        for (int pct = 10; pct <= 100; pct += 5) g.levels.push_back(pct / 100.0);
        return g;
    }

    void validate() const {
        if (levels.empty()) throw parameter_error("threshold_grid: empty");
        double prev = 0.0;
        for (double t : levels) {
            if (!(t > 0.0 && t <= 1.0))
                throw parameter_error("threshold_grid: level " + std::to_string(t) +
                                      " outside (0, 1]");
            if (!(t > prev)) throw parameter_error("threshold_grid: levels not strictly increasing");
            prev = t;
        }
    }
};

/// Candidate event durations in hours, scanned in strictly descending order.
/// The full grid (every integer from max down to min) is the reference
/// parameterization; a coarser grid is allowed for speed but marks catalogs
/// as approximate.
struct duration_grid {
    std::vector<std::int64_t> durations;
    bool full_density = false;

    static duration_grid full(std::int64_t max_duration = 2 * hours_per_year,
                              std::int64_t min_duration = 1) {
        if (min_duration < 1 || max_duration < min_duration)
            throw parameter_error("duration_grid: need 1 <= min <= max, got min=" +
                                  std::to_string(min_duration) + " max=" +
                                  std::to_string(max_duration));
        duration_grid g;
        g.durations.reserve(static_cast<size_t>(max_duration - min_duration + 1));
        for (std::int64_t d = max_duration; d >= min_duration; --d) g.durations.push_back(d);
        g.full_density = true;
        return g;
    }

    static duration_grid custom(std::vector<std::int64_t> durations) {
        if (durations.empty()) throw parameter_error("duration_grid: empty");
        std::int64_t prev = std::numeric_limits<std::int64_t>::max();
        for (std::int64_t d : durations) {
            if (d < 1) throw parameter_error("duration_grid: duration below 1");
            if (d >= prev) throw parameter_error("duration_grid: not strictly descending");
            prev = d;
        }
        duration_grid g;
        g.full_density = durations.front() - durations.back() + 1 ==
                         static_cast<std::int64_t>(durations.size());
        g.durations = std::move(durations);
        return g;
    }

    std::int64_t max_duration() const { return durations.front(); }
    std::int64_t min_duration() const { return durations.back(); }
};

// ---------------------------------------------------------------------------
// Events.
// ---------------------------------------------------------------------------

struct drought_event {
    std::int64_t start = 0;
    std::int64_t duration = 0;
    double threshold_rel = std::numeric_limits<double>::quiet_NaN();
    double threshold_abs = 0.0;
    double mean_availability = 0.0;

    std::int64_t end() const { return start + duration - 1; }
};

struct event_catalog {
    std::string key;
    double threshold_rel = std::numeric_limits<double>::quiet_NaN();
    double threshold_abs = 0.0;
    bool approximate_grid = false;  // true when detected on a non-full duration grid
    std::vector<drought_event> events;
};

/// Absolute drought threshold for a relative level tau: tau * long-run mean.
inline double absolute_threshold(const availability_series& series, double tau) {
    if (!(tau > 0.0 && tau <= 1.0))
        throw parameter_error("absolute_threshold: tau " + std::to_string(tau) +
                              " outside (0, 1]");
    return tau * series.long_run_mean;
}

namespace detail {

/// Exact strict comparison of w*a against s*b for doubles w, s and integer
/// factors a, b that are exactly representable. The error-free fma residuals
/// make the decision match real arithmetic, so knife-edge ties (a window mean
/// exactly on the threshold) resolve deterministically as "not below" and
/// survive exact rescaling of the data. The cheap filter skips the fma pair
/// whenever the products are separated beyond rounding reach.
inline bool scaled_strictly_less(double w, double a, double s, double b) {
    const double p1 = w * a;
    const double p2 = s * b;
    const double mag = std::max(std::abs(p1), std::abs(p2));
    if (std::abs(p1 - p2) > mag * 0x1p-50) return p1 < p2;
    // Near region: p1 - p2 is exact (Sterbenz) and the fma residuals land on
    // a shared lattice fine enough that the compensated sum has the exact
    // sign of w*a - s*b.
    const double e1 = std::fma(w, a, -p1);
    const double e2 = std::fma(s, b, -p2);
    return (p1 - p2) + (e1 - e2) < 0.0;
}

/// Small-denominator decimal fraction that reproduces tau bit for bit, when
/// one exists. Threshold grids are specified as decimal fractions (0.10,
/// 0.15, ...), so the reconstruction is exact for every grid in practice.
struct tau_fraction {
    std::int64_t num = 0;
    std::int64_t den = 0;  // 0: tau has no short decimal form

    bool exact() const { return den != 0; }

    static tau_fraction of(double tau) {
        for (std::int64_t den : {10LL, 20LL, 100LL, 1000LL, 10000LL, 100000LL, 1000000LL}) {
            const auto num = static_cast<std::int64_t>(std::llround(tau * static_cast<double>(den)));
            if (num > 0 && static_cast<double>(num) / static_cast<double>(den) == tau)
                return {num, den};
        }
        return {};
    }
};

// Iterates candidate durations in descending order; in each pass scans
// windows left to right, claims every window that qualifies, and excludes
// claimed hours from the rest of the search (including the remainder of the
// current pass). Windows that would contain an excluded hour are skipped
// whole; shorter remnants are picked up at smaller durations.
//
// Window sums come from one prefix-sum array and exclusion is an ordered map
// of free (unclaimed) intervals, so a pass costs time linear in the unclaimed
// length rather than duration * length.
template <class Qualifies>
event_catalog detect_impl(const availability_series& series, double threshold_abs,
                          const duration_grid& grid, Qualifies&& qualifies) {
    const std::int64_t n = static_cast<std::int64_t>(series.values.size());
    if (n == 0) throw parameter_error("detect_events: empty series");
    if (grid.max_duration() > n)
        throw parameter_error("detect_events: max duration " +
                              std::to_string(grid.max_duration()) + " exceeds series length " +
                              std::to_string(n));

    std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
    for (std::int64_t i = 0; i < n; ++i)
        prefix[static_cast<size_t>(i) + 1] =
            prefix[static_cast<size_t>(i)] + series.values[static_cast<size_t>(i)];

    event_catalog catalog;
    catalog.key = series.key.str();
    catalog.threshold_abs = threshold_abs;
    catalog.approximate_grid = !grid.full_density;

    std::map<std::int64_t, std::int64_t> free;  // start -> inclusive end of unclaimed runs
    free.emplace(0, n - 1);

    for (std::int64_t d : grid.durations) {
        if (free.empty()) break;
        // Snapshot the interval starts; a claim only ever splits the interval
        // currently being scanned, and the scan continues in its right piece.
        std::vector<std::int64_t> starts;
        starts.reserve(free.size());
        for (const auto& [lo, hi] : free)
            if (hi - lo + 1 >= d) starts.push_back(lo);

        for (std::int64_t lo : starts) {
            auto it = free.find(lo);
            std::int64_t hi = it->second;
            std::int64_t s = lo;
            while (s + d - 1 <= hi) {
                const double sum =
                    prefix[static_cast<size_t>(s + d)] - prefix[static_cast<size_t>(s)];
                if (qualifies(sum, d)) {
                    drought_event ev;
                    ev.start = s;
                    ev.duration = d;
                    ev.threshold_abs = threshold_abs;
                    ev.mean_availability = sum / static_cast<double>(d);
                    catalog.events.push_back(ev);
                    // Split the free interval around the claimed window.
                    free.erase(it);
                    if (s - 1 >= lo) free.emplace(lo, s - 1);
                    if (s + d <= hi) it = free.emplace(s + d, hi).first;
                    lo = s + d;
                    s = lo;
                    if (lo > hi) break;
                } else {
                    ++s;
                }
            }
        }
    }

    std::sort(catalog.events.begin(), catalog.events.end(),
              [](const drought_event& a, const drought_event& b) { return a.start < b.start; });
    return catalog;
}

}  // namespace detail

/// Detection against an absolute availability level: a window qualifies when
/// its mean is strictly below the level.
inline event_catalog detect_events(const availability_series& series, double threshold_abs,
                                   const duration_grid& grid) {
    return detail::detect_impl(series, threshold_abs, grid,
                               [threshold_abs](double sum, std::int64_t d) {
                                   return sum < threshold_abs * static_cast<double>(d);
                               });
}

/// Detection against a relative threshold tau: qualifies when the window mean
/// is strictly below tau times the series mean. When tau is a short decimal
/// fraction num/den the comparison
///     window_sum / d  <  (num/den) * total_sum / n
/// is evaluated exactly as window_sum * (den*n) < total_sum * (num*d), which
/// keeps catalogs invariant under exact rescaling of the values and makes
/// ties (for instance the full-record window at tau = 1) resolve as
/// non-events. Other tau values fall back to the absolute route.
inline event_catalog detect_events_relative(const availability_series& series, double tau,
                                            const duration_grid& grid) {
    const double threshold_abs = absolute_threshold(series, tau);
    const auto frac = detail::tau_fraction::of(tau);
    event_catalog catalog;
    if (!frac.exact()) {
        catalog = detect_events(series, threshold_abs, grid);
    } else {
        const double total = detail::sum(series.values);
        const double den_n =
            static_cast<double>(frac.den) * static_cast<double>(series.values.size());
        catalog = detail::detect_impl(
            series, threshold_abs, grid, [total, den_n, num = frac.num](double sum, std::int64_t d) {
                return detail::scaled_strictly_less(
                    sum, den_n, total, static_cast<double>(num) * static_cast<double>(d));
            });
    }
    catalog.threshold_rel = tau;
    for (auto& ev : catalog.events) ev.threshold_rel = tau;
    return catalog;
}

using sweep_result = std::map<double, event_catalog>;

/// Runs the relative detection once per threshold level. Passes are
/// independent, so they parallelize across thresholds without affecting the
/// result.
inline sweep_result sweep(const availability_series& series, const threshold_grid& taus,
                          const duration_grid& grid, int jobs = 1) {
    taus.validate();
    std::vector<event_catalog> catalogs(taus.levels.size());
    parallel_for(taus.levels.size(), jobs, [&](size_t i) {
        catalogs[i] = detect_events_relative(series, taus.levels[i], grid);
    });
    sweep_result out;
    for (size_t i = 0; i < taus.levels.size(); ++i)
        out.emplace(taus.levels[i], std::move(catalogs[i]));
    return out;
}

}  // namespace vred
