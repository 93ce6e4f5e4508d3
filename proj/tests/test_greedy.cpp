#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dpcover/cover.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/greedy.hpp"
#include "helpers.hpp"

using namespace dpcover;
using testutil::identityCover;

namespace {

DegeneracyOrdering explicitOrdering(const Graph& g, std::vector<int> order) {
    DegeneracyOrdering ord;
    ord.order = std::move(order);
    std::vector<int> pos(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) pos[static_cast<std::size_t>(ord.order[static_cast<std::size_t>(i)])] = i;
    ord.backDegrees.assign(static_cast<std::size_t>(g.n()), 0);
    for (int i = 0; i < g.n(); ++i) {
        int back = 0;
        for (int w : g.neighbors(ord.order[static_cast<std::size_t>(i)]))
            if (pos[static_cast<std::size_t>(w)] < i) ++back;
        ord.backDegrees[static_cast<std::size_t>(i)] = back;
        ord.d = std::max(ord.d, back);
    }
    return ord;
}

} // namespace

TEST_CASE("hand-simulated greedy pass on the identity cover of P_3") {
    const Graph g = path(3);
    const Cover c = identityCover(g, 2);
    const GtOutcome out = gtRun(c, 1, explicitOrdering(g, {0, 1, 2}));
    CHECK(out.success);
    // v0 picks 0, v1 loses 0 and picks 1, v2 loses 1 and picks 0
    CHECK(out.transversal.choice ==
          std::vector<std::vector<int>>{{0}, {1}, {0}});
    CHECK(out.survivorCounts == std::vector<int>{2, 1, 1});
    CHECK(isIndependentBFold(c, out.transversal));
}

TEST_CASE("greedy pass fails on the identity cover of K_3 with k=2") {
    const Graph g = complete(3);
    const GtOutcome out = gtRun(identityCover(g, 2), 1, degeneracyOrdering(g));
    CHECK_FALSE(out.success);
    CHECK(out.survivorCounts.back() == 0);
    // the deficient vertex receives the fallback set {0}
    CHECK(out.transversal.choice[static_cast<std::size_t>(
              degeneracyOrdering(g).order.back())] == std::vector<int>{0});
}

TEST_CASE("b=k makes the greedy pass deterministic: success iff edgeless") {
    const Graph edgeless(4, {});
    const Cover cE = sampleCover(edgeless, 3, Seed{1});
    CHECK(gtRun(cE, 3, degeneracyOrdering(edgeless)).success);

    const Graph g = complete(3);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Cover c = sampleCover(g, 3, Seed{s});
        const GtOutcome a = gtRun(c, 3, degeneracyOrdering(g));
        const GtOutcome b = gtRun(c, 3, degeneracyOrdering(g));
        CHECK_FALSE(a.success);
        CHECK(a.transversal.choice == b.transversal.choice); // pure function
    }
}

TEST_CASE("success implies the emitted transversal is independent") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const Graph g = randomGraph(6, 8, Seed{s});
        const Cover c = sampleCover(g, 4, Seed{s + 31});
        const GtOutcome out = gtRun(c, 1, degeneracyOrdering(g));
        if (out.success) CHECK(isIndependentBFold(c, out.transversal));
        const bool minOk =
            *std::min_element(out.survivorCounts.begin(), out.survivorCounts.end()) >= 1;
        CHECK(out.success == minOk);
    }
}

TEST_CASE("gtRun validates its parameters") {
    const Cover c = identityCover(complete(3), 2);
    CHECK_THROWS_AS(gtRun(c, 3, degeneracyOrdering(complete(3))), UsageError);
    CHECK_THROWS_AS(gtRun(c, 0, degeneracyOrdering(complete(3))), UsageError);
}

TEST_CASE("gtSuccessRate is exactly 1 on edgeless graphs") {
    const Graph g(5, {});
    const Estimate e = gtSuccessRate(g, 3, 2, 500, Seed{4});
    CHECK(e.successes == 500);
    CHECK(e.pointEstimate == 1.0);
}

TEST_CASE("gtSuccessRate matches the exhaustive greedy success fraction on K_3") {
    const Graph g = complete(3);
    const DegeneracyOrdering ord = degeneracyOrdering(g);
    std::uint64_t wins = 0, covers = 0;
    enumerateCovers(g, 2, [&](const Cover& c) {
        ++covers;
        if (gtRun(c, 1, ord).success) ++wins;
    });
    const double exact = static_cast<double>(wins) / static_cast<double>(covers);

    const std::uint64_t trials = 4000;
    const Estimate e = gtSuccessRate(g, 2, 1, trials, Seed{11});
    const double se = std::sqrt(exact * (1 - exact) / static_cast<double>(trials));
    CHECK(std::abs(e.pointEstimate - exact) < 4 * se + 1e-12);
}

TEST_CASE("survival means match (1-b/a)^{back degree} within 4 standard errors") {
    const Graph g = randomDegenerate(40, 3, Seed{17});
    const int a = 8, b = 1;
    const std::uint64_t trials = 3000;
    const SurvivalStats st = survivalStats(g, a, b, trials, Seed{29});

    // first vertex in the ordering: no prior neighbors, survival exactly 1
    for (int j = 0; j < a; ++j)
        CHECK(st.meanSurvival[static_cast<std::size_t>(j)] == 1.0);

    for (int pos = 0; pos < g.n(); ++pos) {
        const double p = st.perPositionBound[static_cast<std::size_t>(pos)];
        const double se = std::sqrt(p * (1 - p) / static_cast<double>(trials));
        for (int j = 0; j < a; ++j) {
            const double mean =
                st.meanSurvival[static_cast<std::size_t>(pos) * static_cast<std::size_t>(a) +
                                static_cast<std::size_t>(j)];
            CHECK(std::abs(mean - p) <= 4 * se + 1e-12);
            CHECK(mean >= st.bound - 4 * se - 1e-12); // Lemma-style lower bound
        }
    }
}

TEST_CASE("joint removal frequencies never exceed the product beyond noise") {
    const Graph g = randomDegenerate(30, 3, Seed{41});
    const std::uint64_t trials = 3000;
    const SurvivalStats st = survivalStats(g, 6, 1, trials, Seed{43});
    for (const auto& j : st.joints) {
        const double se = std::sqrt(
            (j.jointFreq * (1 - j.jointFreq) + j.productFreq * (1 - j.productFreq)) /
            static_cast<double>(trials));
        CHECK(j.jointFreq <= j.productFreq + 4 * se + 1e-12);
    }
}

TEST_CASE("negative correlation holds exactly on the full cover space of K_3, k=3") {
    const Graph g = complete(3);
    const DegeneracyOrdering ord = degeneracyOrdering(g);
    const int a = 3;
    const int n = g.n();
    std::uint64_t total = 0;
    // removal counts per (position, index) and per (position, index pair/triple)
    std::vector<std::vector<std::uint64_t>> single(
        static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(a), 0));
    std::vector<std::vector<std::uint64_t>> pairJoint(
        static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(a * a), 0));
    std::vector<std::uint64_t> tripleJoint(static_cast<std::size_t>(n), 0);
    enumerateCovers(g, a, [&](const Cover& c) {
        ++total;
        const GtOutcome out = gtRun(c, 1, ord);
        for (int pos = 0; pos < n; ++pos) {
            const std::uint64_t surv = out.survivorMasks[static_cast<std::size_t>(pos)];
            for (int i = 0; i < a; ++i) {
                if (surv & (std::uint64_t{1} << i)) continue;
                ++single[static_cast<std::size_t>(pos)][static_cast<std::size_t>(i)];
                for (int j = i + 1; j < a; ++j)
                    if (!(surv & (std::uint64_t{1} << j)))
                        ++pairJoint[static_cast<std::size_t>(pos)]
                                   [static_cast<std::size_t>(i * a + j)];
            }
            if (surv == 0) ++tripleJoint[static_cast<std::size_t>(pos)];
        }
    });
    REQUIRE(total == 216);
    for (int pos = 0; pos < n; ++pos) {
        for (int i = 0; i < a; ++i)
            for (int j = i + 1; j < a; ++j) {
                // P(Y_i = Y_j = 1) <= P(Y_i = 1) P(Y_j = 1), cross-multiplied
                const std::uint64_t lhs =
                    pairJoint[static_cast<std::size_t>(pos)][static_cast<std::size_t>(i * a + j)] *
                    total;
                const std::uint64_t rhs =
                    single[static_cast<std::size_t>(pos)][static_cast<std::size_t>(i)] *
                    single[static_cast<std::size_t>(pos)][static_cast<std::size_t>(j)];
                CHECK(lhs <= rhs);
            }
        const std::uint64_t lhs3 = tripleJoint[static_cast<std::size_t>(pos)] * total * total;
        const std::uint64_t rhs3 = single[static_cast<std::size_t>(pos)][0] *
                                   single[static_cast<std::size_t>(pos)][1] *
                                   single[static_cast<std::size_t>(pos)][2];
        CHECK(lhs3 <= rhs3);
    }
}

TEST_CASE("survivalStats validates its parameters") {
    CHECK_THROWS_AS(survivalStats(complete(3), 2, 1, 50, Seed{1}), UsageError);
    CHECK_THROWS_AS(survivalStats(complete(3), 2, 3, 500, Seed{1}), UsageError);
}
