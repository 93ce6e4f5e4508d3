#include <catch2/catch_amalgamated.hpp>

#include "dpcover/estimate.hpp"

using namespace dpcover;

TEST_CASE("Wilson interval hand value: 5 of 10 at 95%") {
    const WilsonInterval ci = wilsonInterval(5, 10, 0.95);
    CHECK(ci.low == Catch::Approx(0.2366).margin(0.002));
    CHECK(ci.high == Catch::Approx(0.7634).margin(0.002));
}

TEST_CASE("Wilson interval stays in [0,1] at the extremes") {
    const WilsonInterval zero = wilsonInterval(0, 20, 0.95);
    CHECK(zero.low == 0.0);
    CHECK(zero.high > 0.0);
    const WilsonInterval one = wilsonInterval(20, 20, 0.95);
    CHECK(one.high == 1.0);
    CHECK(one.low < 1.0);
    CHECK_THROWS_AS(wilsonInterval(1, 0, 0.95), UsageError);
    CHECK_THROWS_AS(wilsonInterval(1, 2, 1.0), UsageError);
}

TEST_CASE("makeEstimate orders its fields") {
    const Estimate e = makeEstimate(7, 10, 0.99, Seed{3}, "exact-solver");
    CHECK(e.ciLow <= e.pointEstimate);
    CHECK(e.pointEstimate <= e.ciHigh);
    CHECK(e.pointEstimate == 0.7);
    CHECK(e.method == "exact-solver");
    CHECK(e.seed.value == 3);
}

TEST_CASE("countSuccesses is exact and thread-count independent") {
    auto trial = [](std::uint64_t i) { return i % 3 == 0; };
    const std::uint64_t expected = 334; // multiples of 3 below 1000
    for (unsigned threads : {1u, 2u, 3u, 4u, 7u})
        CHECK(countSuccesses(1000, threads, trial) == expected);
    CHECK_THROWS_AS(countSuccesses(0, 1, trial), UsageError);
    CHECK_THROWS_AS(countSuccesses(kMaxTrials + 1, 1, trial), GuardExceeded);
}

TEST_CASE("progress callback reaches 100 percent") {
    int last = 0;
    countSuccesses(200, 2, [](std::uint64_t) { return true; },
                   [&](int pct) { last = pct; });
    CHECK(last == 100);
}
