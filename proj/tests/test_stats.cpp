#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"
#include "vred/stats.hpp"

using namespace vred;
using Catch::Matchers::WithinAbs;

namespace {

event_catalog catalog_of(std::vector<std::pair<std::int64_t, std::int64_t>> start_duration,
                         double tau = 0.75) {
    event_catalog c;
    c.key = "XX_test";
    c.threshold_rel = tau;
    for (auto [start, duration] : start_duration) {
        drought_event ev;
        ev.start = start;
        ev.duration = duration;
        ev.threshold_rel = tau;
        c.events.push_back(ev);
    }
    return c;
}

/// Random non-overlapping events over the given number of hours.
event_catalog random_catalog(std::mt19937& rng, std::int64_t n_hours, double tau) {
    std::uniform_int_distribution<std::int64_t> gap(1, 400);
    std::uniform_int_distribution<std::int64_t> dur(1, 900);
    std::vector<std::pair<std::int64_t, std::int64_t>> events;
    std::int64_t h = gap(rng);
    while (true) {
        const std::int64_t d = dur(rng);
        if (h + d > n_hours) break;
        events.push_back({h, d});
        h += d + gap(rng);
    }
    return catalog_of(std::move(events), tau);
}

}  // namespace

TEST_CASE("frequency counts events at least as long as the query") {
    auto c = catalog_of({{0, 5}, {100, 5}, {200, 3}});
    auto curve = frequency_duration(c, 2);
    CHECK(curve.at(3) == 1.5);
    CHECK(curve.at(5) == 1.0);
    CHECK(curve.at(6) == 0.0);
    CHECK(curve.at(1) == 1.5);
    // integer representation carried alongside
    for (const auto& p : curve.points)
        CHECK(p.per_year == static_cast<double>(p.count) / 2.0);
}

TEST_CASE("empty catalogs give an all-zero ladder") {
    auto curve = frequency_duration(catalog_of({}), 10);
    REQUIRE(curve.points.size() == frequency_query_ladder().size());
    for (const auto& p : curve.points) {
        CHECK(p.count == 0);
        CHECK(p.per_year == 0.0);
    }
    CHECK_THROWS_AS(frequency_duration(catalog_of({}), 0), parameter_error);
}

TEST_CASE("frequency is non-increasing in duration") {
    std::mt19937 rng(808);
    for (int iter = 0; iter < 50; ++iter) {
        auto curve = frequency_duration(random_catalog(rng, 17520, 0.5), 2);
        for (size_t i = 1; i < curve.points.size(); ++i) {
            CHECK(curve.points[i].duration_h > curve.points[i - 1].duration_h);
            CHECK(curve.points[i].count <= curve.points[i - 1].count);
        }
    }
}

TEST_CASE("return periods are reciprocal yearly frequencies") {
    auto c = catalog_of({{0, 10}});
    auto curve = frequency_duration(c, 2);  // one event in two years: f = 0.5
    auto periods = return_period(curve);
    bool found = false;
    for (const auto& rp : periods) {
        if (rp.duration_h == 10) {
            found = true;
            CHECK(rp.period_years == 2.0);
        }
    }
    CHECK(found);
}

TEST_CASE("return periods omit frequent and absent events and stay exact") {
    std::mt19937 rng(809);
    for (int iter = 0; iter < 30; ++iter) {
        const std::int64_t years = 2 + static_cast<std::int64_t>(rng() % 37);
        auto curve = frequency_duration(random_catalog(rng, years * hours_per_year, 0.6), years);
        auto periods = return_period(curve);
        for (const auto& rp : periods) {
            CHECK(rp.count >= 1);
            CHECK(rp.count < rp.years);  // frequency strictly below one per year
            CHECK(rp.years == years);
            // reciprocity on the rational representation: f = c/y, p = y/c
            CHECK(rp.period_years == static_cast<double>(rp.years) / static_cast<double>(rp.count));
            CHECK(rp.period_years <= static_cast<double>(years));
            const auto f = curve.at(rp.duration_h);
            CHECK(f == static_cast<double>(rp.count) / static_cast<double>(rp.years));
        }
        // every finite-period duration is accounted for
        for (const auto& p : curve.points)
            if (p.count >= 1 && p.count < years)
                CHECK(std::any_of(periods.begin(), periods.end(),
                                  [&](const return_point& rp) { return rp.duration_h == p.duration_h; }));
    }
}

TEST_CASE("median hour assigns boundary-crossing events to the later period") {
    // start Dec 20 (day 353), 30 days long: the median falls in early January
    const time_axis axis(1982, 2 * hours_per_year);
    const std::int64_t start = 353 * 24;
    auto c = catalog_of({{start, 30 * 24}});
    CHECK(median_hour(c.events[0]) == start + 15 * 24);

    auto per_year = max_durations(c, axis, max_duration_grouping::per_year);
    CHECK(per_year.entries.at(1982) == 0);
    CHECK(per_year.entries.at(1983) == 30 * 24);
    CHECK(per_year.overall_year == 1983);

    auto per_month = max_durations(c, axis, max_duration_grouping::per_month);
    CHECK(per_month.entries.at(1) == 30 * 24);
    for (int m = 2; m <= 12; ++m) CHECK(per_month.entries.at(m) == 0);
}

TEST_CASE("max duration tables cover empty catalogs") {
    const time_axis axis(1982, 2 * hours_per_year);
    auto overall = max_durations(catalog_of({}), axis, max_duration_grouping::overall);
    CHECK(overall.entries.empty());
    CHECK(overall.overall_max == 0);
    auto per_year = max_durations(catalog_of({}), axis, max_duration_grouping::per_year);
    CHECK(per_year.entries.size() == 2);
    CHECK(per_year.entries.at(1982) == 0);
}

TEST_CASE("group maxima never exceed the overall maximum and cover all events") {
    std::mt19937 rng(810);
    const time_axis axis(1982, 4 * hours_per_year);
    for (int iter = 0; iter < 20; ++iter) {
        auto c = random_catalog(rng, axis.n_hours, 0.5);
        auto per_year = max_durations(c, axis, max_duration_grouping::per_year);
        auto per_month = max_durations(c, axis, max_duration_grouping::per_month);
        for (const auto& [year, mx] : per_year.entries) CHECK(mx <= per_year.overall_max);
        for (const auto& [month, mx] : per_month.entries) CHECK(mx <= per_month.overall_max);
        // each event lands in exactly one year and one month bucket
        std::int64_t assigned = 0;
        for (const auto& ev : c.events) {
            const int y = axis.year_of(median_hour(ev));
            const int m = axis.month_of(median_hour(ev));
            CHECK(per_year.entries.contains(y));
            CHECK(per_month.entries.contains(m));
            ++assigned;
        }
        CHECK(assigned == static_cast<std::int64_t>(c.events.size()));
    }
}

namespace {

sweep_result sweep_from(const std::vector<std::pair<double, std::vector<std::pair<std::int64_t, std::int64_t>>>>& spec) {
    sweep_result r;
    for (const auto& [tau, events] : spec) {
        auto c = catalog_of(events, tau);
        r.emplace(tau, std::move(c));
    }
    return r;
}

}  // namespace

TEST_CASE("identical catalogs give a zero effect at every threshold") {
    auto a = sweep_from({{0.5, {{0, 10}, {50, 20}}}, {0.75, {{0, 40}}}});
    auto pct = effect_pct(max_duration_by_tau(a), max_duration_by_tau(a));
    REQUIRE(pct.has_value());
    CHECK(*pct == 0.0);
}

TEST_CASE("halving the max duration everywhere is minus fifty percent") {
    auto ref = sweep_from({{0.5, {{0, 10}}}, {0.75, {{0, 40}}}});
    auto alt = sweep_from({{0.5, {{0, 5}}}, {0.75, {{0, 20}}}});
    auto pct = effect_pct(max_duration_by_tau(ref), max_duration_by_tau(alt));
    REQUIRE(pct.has_value());
    CHECK(*pct == -50.0);
}

TEST_CASE("thresholds without reference events are skipped") {
    auto ref = sweep_from({{0.5, {}}, {0.75, {{0, 40}}}});
    auto alt = sweep_from({{0.5, {{0, 99}}}, {0.75, {{0, 30}}}});
    auto pct = effect_pct(max_duration_by_tau(ref), max_duration_by_tau(alt));
    REQUIRE(pct.has_value());
    CHECK(*pct == -25.0);

    auto empty_ref = sweep_from({{0.5, {}}, {0.75, {}}});
    CHECK_FALSE(effect_pct(max_duration_by_tau(empty_ref), max_duration_by_tau(alt)).has_value());
}

TEST_CASE("portfolio and balancing rows pick up only present technologies") {
    std::map<std::string, sweep_result> techs;
    techs.emplace("pv", sweep_from({{0.75, {{0, 100}}}}));
    techs.emplace("onshore", sweep_from({{0.75, {{0, 50}}}}));
    auto portfolio = sweep_from({{0.75, {{0, 25}}}});
    auto row = portfolio_effect("DE", techs, portfolio);
    CHECK(row.region == "DE");
    CHECK_THAT(row.value_pct.at("pv"), WithinAbs(-75.0, 1e-12));
    CHECK_THAT(row.value_pct.at("onshore"), WithinAbs(-50.0, 1e-12));
    CHECK_FALSE(row.value_pct.contains("offshore"));

    std::map<std::string, sweep_result> region_all, cp_all;
    region_all.emplace("portfolio", sweep_from({{0.75, {{0, 20}}}}));
    cp_all.emplace("portfolio", sweep_from({{0.75, {{0, 20}}}}));
    auto brow = balancing_effect("DE", region_all, cp_all);
    CHECK(brow.value_pct.at("portfolio") == 0.0);
}

TEST_CASE("aggregation weights regions by generation potential") {
    effect_row a{"AA", {{"pv", -60.0}}, 1.0};
    effect_row b{"BB", {{"pv", -40.0}}, 1.0};
    auto agg = aggregate_effects({a, b});
    CHECK_THAT(agg.value_pct.at("pv"), WithinAbs(-50.0, 1e-12));

    auto single = aggregate_effects({a});
    CHECK(single.value_pct.at("pv") == -60.0);

    effect_row zero{"CC", {{"pv", -10.0}}, 0.0};
    CHECK_THROWS_AS(aggregate_effects({effect_row{"AA", {}, 0.0}, zero}), parameter_error);

    // regions lacking a column do not dilute it
    effect_row c{"CC", {{"onshore", -30.0}}, 3.0};
    auto mixed = aggregate_effects({a, c});
    CHECK_THAT(mixed.value_pct.at("pv"), WithinAbs(-60.0, 1e-12));
    CHECK_THAT(mixed.value_pct.at("onshore"), WithinAbs(-30.0, 1e-12));
}
