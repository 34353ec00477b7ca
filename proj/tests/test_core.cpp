#include <catch2/catch_amalgamated.hpp>

#include "vred/core.hpp"
#include "vred/sha256.hpp"

using namespace vred;

TEST_CASE("time_axis requires whole no-leap years") {
    CHECK_NOTHROW(time_axis(1982, 8760));
    CHECK_NOTHROW(time_axis(1982, 38 * 8760));
    CHECK_THROWS_AS(time_axis(1982, 0), parameter_error);
    CHECK_THROWS_AS(time_axis(1982, 8761), parameter_error);
    CHECK_THROWS_AS(time_axis(1982, -8760), parameter_error);
}

TEST_CASE("hour mapping is bijective") {
    const time_axis axis(1982, 3 * 8760);
    for (std::int64_t h : {std::int64_t(0), std::int64_t(1), std::int64_t(8759),
                           std::int64_t(8760), std::int64_t(17519), std::int64_t(26279)}) {
        const int year = axis.year_of(h);
        const std::int64_t hoy = axis.hour_of_year(h);
        CHECK(axis.hour_from(year, hoy) == h);
    }
    // exhaustive over one year boundary
    for (std::int64_t h = 8000; h < 9500; ++h)
        CHECK(axis.hour_from(axis.year_of(h), axis.hour_of_year(h)) == h);
}

TEST_CASE("month lookup follows the 365-day calendar") {
    const time_axis axis(1982, 8760);
    CHECK(axis.month_of(0) == 1);
    CHECK(axis.month_of(31 * 24 - 1) == 1);   // Jan 31 23:00
    CHECK(axis.month_of(31 * 24) == 2);       // Feb 1 00:00
    CHECK(axis.month_of(59 * 24) == 3);       // Mar 1 (no leap day)
    CHECK(axis.month_of(334 * 24 - 1) == 11); // Nov 30 23:00
    CHECK(axis.month_of(334 * 24) == 12);     // Dec 1
    CHECK(axis.month_of(8759) == 12);
    // second year repeats the pattern
    const time_axis two(1982, 2 * 8760);
    CHECK(two.month_of(8760) == 1);
    CHECK(two.year_of(8760) == 1983);
}

TEST_CASE("availability_series validates values and recomputes the mean") {
    const time_axis axis(1982, 8760);
    std::vector<double> v(8760, 0.25);
    v[10] = 0.75;
    auto s = availability_series::make({"DE", "pv"}, axis, v);
    CHECK(s.long_run_mean == detail::mean(s.values));
    CHECK(s.key.str() == "DE_pv");

    v[10] = 1.25;
    CHECK_THROWS_AS(availability_series::make({"DE", "pv"}, axis, v), range_error);
    v[10] = -0.1;
    CHECK_THROWS_AS(availability_series::make({"DE", "pv"}, axis, v), range_error);
    v.pop_back();
    CHECK_THROWS_AS(availability_series::make({"DE", "pv"}, axis, v), parameter_error);
}

TEST_CASE("capacity_table rejects negative capacity") {
    capacity_table t;
    t.set({"DE", "pv"}, 400000.0);
    t.set({"DE", "onshore"}, 160000.0);
    CHECK(t.entries.size() == 2);
    CHECK(t.get({"DE", "pv"}) == 400000.0);
    CHECK(t.get({"DE", "offshore"}) == 0.0);
    CHECK_THROWS_AS(t.set({"DE", "pv"}, -5.0), range_error);
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256::of("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256::of("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256::of("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // incremental update matches one-shot
    sha256 h;
    h.update("ab");
    h.update("c");
    CHECK(h.hex_digest() == sha256::of("abc"));
}
