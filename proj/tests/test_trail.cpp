#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "primegrid/analytic.hpp"
#include "primegrid/rng.hpp"
#include "primegrid/signature.hpp"
#include "primegrid/trail.hpp"

using namespace primegrid;

TEST_CASE("hop") {
    CHECK(trail::hop(0, 1) == 1);
    CHECK(trail::hop(3, 2) == 3);
    CHECK(trail::hop(2, 1) == 2);
}

TEST_CASE("stream_trail reproduces the first prime stops") {
    const auto seg = signature::sieve_norms(2, 31);
    trail::TrailCheckpoint cp;
    trail::PrimeStops stops;
    cp = trail::stream_trail(seg, cp, stops);
    CHECK(stops.values ==
          std::vector<uint64_t>{1, 2, 6, 8, 17, 21, 31, 35, 41, 57});
    CHECK(cp.next_n == 31);
    CHECK(cp.prime_count == 10);
    CHECK(cp.cumsum_linf == 58);  // L_inf(30)

    trail::TrailCheckpoint fresh;
    CHECK_THROWS_AS(trail::stream_trail(signature::sieve_norms(5, 9), fresh, stops),
                    std::domain_error);
}

TEST_CASE("segmentation independence over [2, 1e6]") {
    trail::PrimeStops one_stops;
    trail::TrailCheckpoint one_cp =
        trail::run_trail(2, 1000000, trail::TrailCheckpoint{}, 1000000, 1, one_stops);

    // 97 unequal segments with deterministic pseudo-random cuts
    signature::SieveContext ctx(signature::isqrt(1000000));
    Xoshiro256ss rng(2024);
    std::vector<uint64_t> cuts{2};
    for (int i = 0; i < 96; ++i) cuts.push_back(2 + rng.next_below(999999));
    cuts.push_back(1000001);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    trail::TrailCheckpoint cp;
    trail::PrimeStops stops;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto seg = signature::sieve_norms(cuts[i], cuts[i + 1], ctx);
        cp = trail::stream_trail(seg, cp, stops);
    }
    CHECK(cp == one_cp);
    CHECK(stops.values == one_stops.values);
}

TEST_CASE("parallel run matches single-threaded fold") {
    trail::PrimeStops a, b;
    const auto cpa = trail::run_trail(2, 300000, {}, 7777, 1, a);
    const auto cpb = trail::run_trail(2, 300000, {}, 7777, 2, b);
    CHECK(cpa == cpb);
    CHECK(a.values == b.values);
}

TEST_CASE("l1 trail values") {
    CHECK(trail::l1_trail(1) == 0);
    CHECK(trail::l1_trail(2) == 1);
    CHECK(trail::l1_trail(10) == 28);

    // direct-summation oracle at N = 1000
    uint64_t direct = 0;
    for (uint64_t k = 1; k < 1000; ++k) {
        direct += signature::norm_one(signature::factor_signature(k));
        direct += signature::norm_one(signature::factor_signature(k + 1));
    }
    CHECK(trail::l1_trail(1000) == direct);
}

TEST_CASE("L1(p) is odd for every prime p <= 1e4") {
    const uint64_t limit = 10000;
    signature::SieveContext ctx(signature::isqrt(limit));
    const auto om = signature::sieve_norms_l1(2, limit + 1, ctx);
    const auto seg = signature::sieve_norms(2, limit + 1, ctx);
    uint64_t cumsum = 0, last = 0;
    for (uint64_t n = 2; n <= limit; ++n) {
        cumsum += last + om[n - 2];
        last = om[n - 2];
        if (seg.prime_flags[n - 2]) CHECK(cumsum % 2 == 1);
    }
}

TEST_CASE("N <= L_inf(N) < L1(N) for 4 <= N <= 1e5, strict above 4") {
    // L_inf(4) = 4, so the left inequality is an equality exactly at N = 4
    // and strict from N = 5 on.
    const uint64_t limit = 100000;
    signature::SieveContext ctx(signature::isqrt(limit));
    const auto seg = signature::sieve_norms(2, limit + 1, ctx);
    const auto om = signature::sieve_norms_l1(2, limit + 1, ctx);
    uint64_t linf = 0, l1 = 0;
    uint64_t last_inf = 0, last_one = 0;
    for (uint64_t n = 2; n <= limit; ++n) {
        linf += std::max<uint64_t>(last_inf, seg.norms[n - 2]);
        l1 += last_one + om[n - 2];
        last_inf = seg.norms[n - 2];
        last_one = om[n - 2];
        if (n == 4) {
            CHECK(linf == 4);
            CHECK(linf < l1);
        } else if (n > 4) {
            CHECK(n < linf);
            CHECK(linf < l1);
        }
    }
}

TEST_CASE("L1 sandwich bounds") {
    const double gamma = 0.57721566490153286;
    for (uint64_t n : {1000ULL, 10000ULL, 100000ULL}) {
        const double nd = static_cast<double>(n);
        const double lhs = 2.0 * nd * (std::log(std::log(nd)) -
                                       std::log(std::numbers::pi * std::numbers::pi / 6.0));
        const double l1 = static_cast<double>(trail::l1_trail(n)) +
                          static_cast<double>(
                              signature::norm_one(signature::factor_signature(n)));
        const double rhs = 2.0 * nd * std::log(nd) - 4.0 * (1.0 - gamma) * nd +
                           50.0 * std::sqrt(nd);
        CHECK(lhs <= l1);
        CHECK(l1 <= rhs);
    }
}

TEST_CASE("linear growth sandwich at 1e7") {
    trail::PrimeStops stops;
    const auto cp = trail::run_trail(2, 10000000, {}, signature::kDefaultSegment, 2, stops);
    const double ratio = static_cast<double>(cp.cumsum_linf) / 1e7;
    const double c = analytic::constant_c();
    CHECK(ratio > c - 0.01);
    CHECK(ratio < 2.0 * c + 0.01);
}

TEST_CASE("ratio series") {
    trail::PrimeStops stops;
    stops.values = {1, 2, 6, 8, 17, 21, 31, 35, 41, 57};
    const std::vector<uint64_t> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    const auto r1 = trail::ratio_series(stops, primes, 1);
    REQUIRE(r1.size() == 10);
    CHECK(r1[0].ratio == doctest::Approx(0.5));
    CHECK(r1[0].k == 1);
    const auto r4 = trail::ratio_series(stops, primes, 4);
    REQUIRE(r4.size() == 2);
    CHECK(r4[0].k == 4);
    CHECK(r4[1].prime == 19);
    CHECK_THROWS_AS(trail::ratio_series(stops, primes, 0), std::domain_error);
}

TEST_CASE("checkpoint and stops file round trip") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "pg_trail_test";
    fs::create_directories(dir);
    const std::string stops_path = (dir / "stops.bin").string();
    const std::string cp_path = (dir / "checkpoint.json").string();
    std::remove(stops_path.c_str());

    trail::append_stops_file(stops_path, {1, 2, 6});
    trail::append_stops_file(stops_path, {8, 17});
    CHECK(trail::read_stops_file(stops_path) == std::vector<uint64_t>{1, 2, 6, 8, 17});
    trail::truncate_stops_file(stops_path, 3);
    CHECK(trail::read_stops_file(stops_path) == std::vector<uint64_t>{1, 2, 6});

    trail::TrailCheckpoint cp{31, 1, 59, 10};
    trail::write_checkpoint_json(cp_path, cp, "stops.bin");
    std::string name;
    const auto rt = trail::read_checkpoint_json(cp_path, &name);
    CHECK(rt == cp);
    CHECK(name == "stops.bin");
    fs::remove_all(dir);
}
