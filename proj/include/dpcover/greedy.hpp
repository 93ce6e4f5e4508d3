#ifndef DPCOVER_GREEDY_HPP
#define DPCOVER_GREEDY_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "dpcover/cover.hpp"
#include "dpcover/errors.hpp"
#include "dpcover/estimate.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/rng.hpp"
#include "dpcover/transversal.hpp"

namespace dpcover {

/// Output of one greedy pass. survivorCounts and survivorMasks are indexed
/// by processing position; the transversal is indexed by vertex id, with
/// the fallback set {0..b-1} recorded on deficient vertices.
struct GtOutcome {
    BFoldTransversal transversal;
    bool success = true;
    std::vector<int> survivorCounts;
    std::vector<std::uint64_t> survivorMasks;
};

/// Greedy transversal pass: process vertices in the given ordering, drop
/// the indices matched to previously chosen elements, take the b smallest
/// survivors (or the fallback set {0..b-1} with success=false when fewer
/// than b survive), and always run all n steps.
inline GtOutcome gtRun(const Cover& c, int b, const DegeneracyOrdering& ordering) {
    const int k = c.k;
    const int n = c.graph.n();
    if (b < 1 || b > k) throw UsageError("gtRun: need 1 <= b <= k");
    if (k > kMaxSolverFold)
        throw GuardExceeded("gtRun: k > " + std::to_string(kMaxSolverFold));
    if (static_cast<int>(ordering.order.size()) != n)
        throw UsageError("gtRun: ordering size mismatch");

    const std::uint64_t full =
        (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    std::vector<std::uint64_t> removed(static_cast<std::size_t>(n), 0);
    std::vector<bool> processed(static_cast<std::size_t>(n), false);
    std::vector<int> inv(c.k);

    GtOutcome out;
    out.transversal.choice.assign(static_cast<std::size_t>(n), {});
    out.survivorCounts.reserve(static_cast<std::size_t>(n));
    out.survivorMasks.reserve(static_cast<std::size_t>(n));

    for (int pos = 0; pos < n; ++pos) {
        const int v = ordering.order[static_cast<std::size_t>(pos)];
        const std::uint64_t survivors = full & ~removed[static_cast<std::size_t>(v)];
        const int count = __builtin_popcountll(survivors);
        out.survivorCounts.push_back(count);
        out.survivorMasks.push_back(survivors);

        std::vector<int>& chosen = out.transversal.choice[static_cast<std::size_t>(v)];
        if (count >= b) {
            for (int i = 0; i < k && static_cast<int>(chosen.size()) < b; ++i)
                if (survivors & (std::uint64_t{1} << i)) chosen.push_back(i);
        } else {
            out.success = false;
            for (int i = 0; i < b; ++i) chosen.push_back(i);
        }

        processed[static_cast<std::size_t>(v)] = true;
        for (int j : c.graph.incidentEdges(v)) {
            const auto& [eu, ev] = c.graph.edges()[static_cast<std::size_t>(j)];
            const int w = (eu == v) ? ev : eu;
            if (processed[static_cast<std::size_t>(w)]) continue;
            const auto& p = c.perms[static_cast<std::size_t>(j)];
            if (eu == v) {
                for (int i : chosen)
                    removed[static_cast<std::size_t>(w)] |=
                        std::uint64_t{1} << p[static_cast<std::size_t>(i)];
            } else {
                for (int i = 0; i < k; ++i) inv[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = i;
                for (int i : chosen)
                    removed[static_cast<std::size_t>(w)] |=
                        std::uint64_t{1} << inv[static_cast<std::size_t>(i)];
            }
        }
    }
    return out;
}

/// Fraction of sampled covers on which the greedy pass succeeds. Trial i
/// uses the cover from substream (seed, i), the same substream layout as
/// estimateProbability, so both methods can be compared on identical covers.
inline Estimate gtSuccessRate(const Graph& g, int a, int b, std::uint64_t trials,
                              Seed seed, double level = kDefaultLevel,
                              unsigned threads = 0,
                              const ProgressFn& progress = nullptr) {
    if (b < 1 || b > a) throw UsageError("gtSuccessRate: need 1 <= b <= a");
    const DegeneracyOrdering ordering = degeneracyOrdering(g);
    const std::uint64_t successes = countSuccesses(
        trials, threads,
        [&](std::uint64_t i) {
            const Cover c = sampleCover(g, a, substream(seed, i));
            return gtRun(c, b, ordering).success;
        },
        progress);
    return makeEstimate(successes, trials, level, seed, "gt-procedure");
}

/// Empirical survival statistics of the greedy pass over random covers.
struct SurvivalStats {
    std::uint64_t trials = 0;
    int a = 0;
    int b = 0;
    DegeneracyOrdering ordering;
    /// mean of the survival indicator X_{i,j}, row-major n x a by
    /// processing position
    std::vector<double> meanSurvival;
    /// (1 - b/a)^d and the per-position sharp value (1 - b/a)^{d_i^-}
    double bound = 1.0;
    std::vector<double> perPositionBound;
    /// joint removal frequencies for sampled index subsets, against the
    /// product of the marginals
    struct Joint {
        int position = 0;
        std::vector<int> indices;
        double jointFreq = 0.0;
        double productFreq = 0.0;
    };
    std::vector<Joint> joints;
};

/// Per-(vertex,index) survival means plus joint removal frequencies for
/// sampled index subsets of sizes 2 and 3 at each vertex.
inline SurvivalStats survivalStats(const Graph& g, int a, int b,
                                   std::uint64_t trials, Seed seed,
                                   unsigned threads = 0,
                                   int subsetsPerSize = 8) {
    if (b < 1 || b > a) throw UsageError("survivalStats: need 1 <= b <= a");
    if (trials < 100) throw UsageError("survivalStats: trials must be >= 100");
    if (trials > kMaxTrials)
        throw GuardExceeded("survivalStats: trials exceed hard cap");
    const int n = g.n();
    SurvivalStats st;
    st.trials = trials;
    st.a = a;
    st.b = b;
    st.ordering = degeneracyOrdering(g);
    st.bound = std::pow(1.0 - static_cast<double>(b) / a, st.ordering.d);
    st.perPositionBound.reserve(static_cast<std::size_t>(n));
    for (int back : st.ordering.backDegrees)
        st.perPositionBound.push_back(std::pow(1.0 - static_cast<double>(b) / a, back));

    // subsets are sampled from a side substream, independent of the trials
    struct SubsetProbe {
        int position;
        std::vector<int> indices;
        std::uint64_t mask;
    };
    std::vector<SubsetProbe> probes;
    for (int pos = 0; pos < n; ++pos) {
        Rng rng(substream(substream(seed, 0xabcdef), static_cast<std::uint64_t>(pos)));
        for (int size = 2; size <= 3 && size <= a; ++size) {
            for (int rep = 0; rep < subsetsPerSize; ++rep) {
                SubsetProbe p;
                p.position = pos;
                p.indices = rng.subset(a, size);
                p.mask = 0;
                for (int i : p.indices) p.mask |= std::uint64_t{1} << i;
                probes.push_back(std::move(p));
            }
        }
    }

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
    const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(a);
    std::vector<std::vector<std::uint64_t>> surviveCount(
        threads, std::vector<std::uint64_t>(cells, 0));
    std::vector<std::vector<std::uint64_t>> jointRemoved(
        threads, std::vector<std::uint64_t>(probes.size(), 0));
    std::vector<std::vector<std::uint64_t>> singleRemoved(
        threads, std::vector<std::uint64_t>(cells, 0));

    auto worker = [&](unsigned tid) {
        for (std::uint64_t t = tid; t < trials; t += threads) {
            const Cover c = sampleCover(g, a, substream(seed, t));
            const GtOutcome out = gtRun(c, b, st.ordering);
            for (int pos = 0; pos < n; ++pos) {
                const std::uint64_t mask = out.survivorMasks[static_cast<std::size_t>(pos)];
                for (int j = 0; j < a; ++j) {
                    const std::size_t cell =
                        static_cast<std::size_t>(pos) * static_cast<std::size_t>(a) +
                        static_cast<std::size_t>(j);
                    if (mask & (std::uint64_t{1} << j))
                        ++surviveCount[tid][cell];
                    else
                        ++singleRemoved[tid][cell];
                }
            }
            for (std::size_t pi = 0; pi < probes.size(); ++pi) {
                const SubsetProbe& p = probes[pi];
                const std::uint64_t mask =
                    out.survivorMasks[static_cast<std::size_t>(p.position)];
                if ((mask & p.mask) == 0) ++jointRemoved[tid][pi]; // all removed
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::vector<std::uint64_t> survive(cells, 0), removedSingle(cells, 0);
    for (unsigned t = 0; t < threads; ++t)
        for (std::size_t i = 0; i < cells; ++i) {
            survive[i] += surviveCount[t][i];
            removedSingle[i] += singleRemoved[t][i];
        }
    st.meanSurvival.resize(cells);
    for (std::size_t i = 0; i < cells; ++i)
        st.meanSurvival[i] = static_cast<double>(survive[i]) / static_cast<double>(trials);

    st.joints.reserve(probes.size());
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        std::uint64_t joint = 0;
        for (unsigned t = 0; t < threads; ++t) joint += jointRemoved[t][pi];
        SurvivalStats::Joint j;
        j.position = probes[pi].position;
        j.indices = probes[pi].indices;
        j.jointFreq = static_cast<double>(joint) / static_cast<double>(trials);
        j.productFreq = 1.0;
        for (int idx : j.indices) {
            const std::size_t cell =
                static_cast<std::size_t>(j.position) * static_cast<std::size_t>(a) +
                static_cast<std::size_t>(idx);
            j.productFreq *= static_cast<double>(removedSingle[cell]) /
                             static_cast<double>(trials);
        }
        st.joints.push_back(std::move(j));
    }
    return st;
}

} // namespace dpcover

#endif // DPCOVER_GREEDY_HPP
