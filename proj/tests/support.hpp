#pragma once

// Shared test support: brute-force reference implementations and random input
// generators. The oracles mirror the documented selection semantics by plain
// enumeration and stay independent of the prefix-sum/interval machinery they
// check.

#include <algorithm>
#include <random>
#include <vector>

#include "vred/core.hpp"
#include "vred/detect.hpp"
#include "vred/storage.hpp"

namespace testsupport {

// ---------------------------------------------------------------------------
// Series construction helpers.
// ---------------------------------------------------------------------------

/// Axis for a bare algorithmic fragment (not whole calendar years).
inline vred::time_axis fragment_axis(std::int64_t n_hours) {
    vred::time_axis axis;
    axis.start_year = 0;
    axis.n_hours = n_hours;
    return axis;
}

inline vred::availability_series make_series(std::vector<double> values,
                                             std::string region = "XX",
                                             std::string technology = "test") {
    const auto n = static_cast<std::int64_t>(values.size());
    return vred::availability_series::make({std::move(region), std::move(technology)},
                                           fragment_axis(n), std::move(values));
}

/// Values on a 1/1024 grid: window sums of up to ~500k of them are exactly
/// representable, so prefix-sum differences equal direct summation bit for
/// bit and exact-equality assertions are meaningful.
inline std::vector<double> random_grid_values(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> dist(0, 1024);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng) / 1024.0;
    return v;
}

/// Piecewise-constant profile on the same grid; produces long qualifying
/// windows and makes the exclusion logic work harder.
inline std::vector<double> random_blocky_values(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> level(0, 1024);
    std::geometric_distribution<int> run_len(0.02);
    std::vector<double> v;
    v.reserve(n);
    while (v.size() < n) {
        const double x = level(rng) / 1024.0;
        const int len = 1 + run_len(rng);
        for (int i = 0; i < len && v.size() < n; ++i) v.push_back(x);
    }
    return v;
}

inline std::vector<double> random_values(std::mt19937& rng, std::size_t n) {
    return rng() % 2 == 0 ? random_grid_values(rng, n) : random_blocky_values(rng, n);
}

// ---------------------------------------------------------------------------
// Brute-force detection oracle: explicit enumeration of every window per
// duration with a per-hour exclusion mask, no prefix sums. The qualification
// rule is the documented one — window mean strictly below the threshold, with
// relative thresholds num/den evaluated exactly against the total sum. On
// grid-valued inputs every sum is exact, so the oracle must match the
// production path bit for bit.
// ---------------------------------------------------------------------------

namespace oracle_detail {

// Independent implementation of the exact strict comparison w*a < s*b.
inline bool products_strictly_less(double w, double a, double s, double b) {
    const double p1 = w * a;
    const double p2 = s * b;
    const double hi = std::max(std::abs(p1), std::abs(p2));
    if (std::abs(p1 - p2) > hi * 0x1p-50) return p1 < p2;
    return (p1 - p2) + (std::fma(w, a, -p1) - std::fma(s, b, -p2)) < 0.0;
}

template <class Qualifies>
vred::event_catalog enumerate(const vred::availability_series& series, double threshold_abs,
                              const vred::duration_grid& grid, Qualifies&& qualifies) {
    const auto n = static_cast<std::int64_t>(series.values.size());
    if (n == 0) throw vred::parameter_error("oracle_detect: empty series");
    if (grid.max_duration() > n)
        throw vred::parameter_error("oracle_detect: max duration exceeds series length");

    std::vector<char> excluded(static_cast<std::size_t>(n), 0);
    vred::event_catalog catalog;
    catalog.key = series.key.str();
    catalog.threshold_abs = threshold_abs;
    catalog.approximate_grid = !grid.full_density;

    for (std::int64_t d : grid.durations) {
        std::int64_t s = 0;
        while (s + d <= n) {
            double sum = 0.0;
            bool free_window = true;
            for (std::int64_t i = s; i < s + d; ++i) {
                if (excluded[static_cast<std::size_t>(i)]) {
                    free_window = false;
                    break;
                }
                sum += series.values[static_cast<std::size_t>(i)];
            }
            if (free_window && qualifies(sum, d)) {
                for (std::int64_t i = s; i < s + d; ++i) excluded[static_cast<std::size_t>(i)] = 1;
                vred::drought_event ev;
                ev.start = s;
                ev.duration = d;
                ev.threshold_abs = threshold_abs;
                ev.mean_availability = sum / static_cast<double>(d);
                catalog.events.push_back(ev);
                s += d;
            } else {
                ++s;
            }
        }
    }
    std::sort(catalog.events.begin(), catalog.events.end(),
              [](const vred::drought_event& a, const vred::drought_event& b) {
                  return a.start < b.start;
              });
    return catalog;
}

}  // namespace oracle_detail

inline vred::event_catalog oracle_detect(const vred::availability_series& series,
                                         double threshold_abs, const vred::duration_grid& grid) {
    return oracle_detail::enumerate(series, threshold_abs, grid,
                                    [threshold_abs](double sum, std::int64_t d) {
                                        return sum < threshold_abs * static_cast<double>(d);
                                    });
}

inline vred::event_catalog oracle_detect_relative(const vred::availability_series& series,
                                                  double tau, const vred::duration_grid& grid) {
    std::int64_t num = 0, den = 0;
    for (std::int64_t candidate : {10LL, 20LL, 100LL, 1000LL, 10000LL}) {
        const auto k = static_cast<std::int64_t>(std::llround(tau * static_cast<double>(candidate)));
        if (k > 0 && static_cast<double>(k) / static_cast<double>(candidate) == tau) {
            num = k;
            den = candidate;
            break;
        }
    }
    const double threshold_abs = tau * series.long_run_mean;
    if (den == 0) return oracle_detect(series, threshold_abs, grid);
    double total = 0.0;
    for (double v : series.values) total += v;
    const double den_n = static_cast<double>(den) * static_cast<double>(series.values.size());
    auto catalog = oracle_detail::enumerate(
        series, threshold_abs, grid, [total, den_n, num](double sum, std::int64_t d) {
            return oracle_detail::products_strictly_less(
                sum, den_n, total, static_cast<double>(num) * static_cast<double>(d));
        });
    catalog.threshold_rel = tau;
    for (auto& ev : catalog.events) ev.threshold_rel = tau;
    return catalog;
}

inline bool same_catalog(const vred::event_catalog& a, const vred::event_catalog& b) {
    if (a.events.size() != b.events.size()) return false;
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        const auto& x = a.events[i];
        const auto& y = b.events[i];
        if (x.start != y.start || x.duration != y.duration ||
            x.mean_availability != y.mean_availability || x.threshold_abs != y.threshold_abs)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Brute-force drawdown oracle: maximum of level[t1] - level[t2] over every
// pair t1 < t2, same tie rules (earliest t1, then largest t2).
// ---------------------------------------------------------------------------

inline vred::drawdown_result brute_drawdown(std::span<const double> net) {
    std::vector<double> level(net.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < net.size(); ++t) {
        acc += net[t];
        level[t] = acc;
    }
    vred::drawdown_result r;
    r.level = level;
    double best = 0.0;
    for (std::int64_t t1 = 0; t1 < static_cast<std::int64_t>(level.size()); ++t1) {
        for (std::int64_t t2 = t1 + 1; t2 < static_cast<std::int64_t>(level.size()); ++t2) {
            const double dd = level[static_cast<std::size_t>(t1)] - level[static_cast<std::size_t>(t2)];
            if (dd > best ||
                (dd == best && r.discharge_interval &&
                 (t1 < r.discharge_interval->first ||
                  (t1 == r.discharge_interval->first && t2 > r.discharge_interval->second)))) {
                best = dd;
                r.discharge_interval = {t1, t2};
            }
        }
    }
    if (best > 0.0)
        r.required_capacity = best;
    else
        r.discharge_interval.reset();
    return r;
}

}  // namespace testsupport
