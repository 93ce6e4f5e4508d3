// Acceptance harness: one pass/fail line per criterion, exit nonzero if any
// criterion fails. Each criterion is self-contained and reports its runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpcover/dpcover.hpp"

using namespace dpcover;

namespace {

int failures = 0;

void criterion(int number, const std::string& title,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d (%.1fs): %s%s%s\n", ok ? "PASS" : "FAIL", number,
                secs, title.c_str(), detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

Cover identityCover(const Graph& g, int k) {
    Cover c{g, k, {}};
    std::vector<int> id(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) id[static_cast<std::size_t>(i)] = i;
    c.perms.assign(static_cast<std::size_t>(g.m()), id);
    return c;
}

/// All graphs on n labeled vertices, as edge subsets of the complete graph.
std::vector<Graph> allGraphsOn(int n) {
    const Graph kn = complete(n);
    std::vector<Graph> out;
    for (std::uint32_t mask = 0; mask < (1u << kn.m()); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (int j = 0; j < kn.m(); ++j)
            if (mask & (1u << j)) edges.push_back(kn.edges()[static_cast<std::size_t>(j)]);
        out.emplace_back(n, std::move(edges));
    }
    return out;
}

bool criterion1(std::string& detail) {
    if (exactColorabilityProbability(complete(3), 2, 1) != Rational(1, 2)) {
        detail = "exact probability is not 1/2";
        return false;
    }
    const std::uint64_t trials = 10000;
    const Estimate e = estimateProbability(complete(3), 2, 1, trials, Seed{42});
    const double half = 3.2905 * std::sqrt(0.25 / static_cast<double>(trials));
    detail = "estimate " + formatReal(e.pointEstimate) + " vs exact 0.5";
    return std::abs(e.pointEstimate - 0.5) <= half;
}

bool criterion2(std::string& detail) {
    const Graph graphs[] = {complete(2), path(3), complete(3),
                            completeMultipartite(2, 2)};
    for (const Graph& g : graphs)
        for (int k = 2; k <= 3; ++k) {
            BigInt sum = 0;
            std::uint64_t covers = 0;
            enumerateCovers(g, k, [&](const Cover& c) {
                sum += countTransversals(c);
                ++covers;
            });
            MomentParams p;
            p.n = g.n();
            p.m = g.m();
            p.k = k;
            if (Rational(sum, BigInt(covers)) != expectedTransversals(p)) {
                detail = "first-moment mismatch on " + g.name() + " k=" +
                         std::to_string(k);
                return false;
            }
        }
    BigInt bSum = 0;
    std::uint64_t bCovers = 0;
    enumerateCovers(complete(2), 4, [&](const Cover& c) {
        bSum += countBFoldTransversals(c, 2);
        ++bCovers;
    });
    if (Rational(bSum, BigInt(bCovers)) != 6) {
        detail = "b-fold average on K_2 (a,b)=(4,2) is not 6";
        return false;
    }
    return true;
}

bool criterion3(std::string& detail) {
    for (int k = 2; k <= 6; ++k) {
        std::uint64_t kFact = 1;
        for (int i = 2; i <= k; ++i) kFact *= static_cast<std::uint64_t>(i);
        std::uint64_t okA = 0, okB = 0, okC = 0;
        for (std::uint64_t r = 0; r < kFact; ++r) {
            const std::vector<int> sigma = dpcover::detail::unrankPermutation(r, k);
            if (sigma[0] != 0) ++okA;
            if (sigma[0] != 0 && sigma[0] != 1) ++okB;
            if (sigma[0] != 0 && sigma[1] != 1) ++okC;
        }
        if (Rational(okA, kFact) != pairCaseProbability(PairCase::A, k) ||
            Rational(okB, kFact) != pairCaseProbability(PairCase::B, k) ||
            Rational(okC, kFact) != pairCaseProbability(PairCase::C, k)) {
            detail = "pair-event mismatch at k=" + std::to_string(k);
            return false;
        }
    }
    return true;
}

bool criterion4(std::string& detail) {
    for (int n = 1; n <= 4; ++n)
        for (const Graph& g : allGraphsOn(n))
            for (int k = 1; k <= 3; ++k) {
                const Rational pCol = exactColorabilityProbability(g, k, 1);
                const MomentParams p = MomentParams::fromGraph(g, k);
                const double markov = markovColorBound(p).value;
                if (ratToDouble(pCol) > markov + 1e-9) {
                    detail = "Markov violated at n=" + std::to_string(n) +
                             " m=" + std::to_string(g.m()) + " k=" + std::to_string(k);
                    return false;
                }
                if (k >= 2 && g.m() >= 1 && expectedTransversals(p) != 0) {
                    const double cheb = chebyshevNonColorBound(p).value;
                    if (ratToDouble(1 - pCol) > cheb + 1e-9) {
                        detail = "Chebyshev violated at n=" + std::to_string(n) +
                                 " m=" + std::to_string(g.m()) +
                                 " k=" + std::to_string(k);
                        return false;
                    }
                }
            }
    return true;
}

bool criterion5(std::string& detail) {
    const Graph g = randomDegenerate(200, 5, Seed{2024});
    const int a = 40, b = 1;
    const std::uint64_t trials = 2000;
    const SurvivalStats st = survivalStats(g, a, b, trials, Seed{2032});
    for (int pos = 0; pos < g.n(); ++pos) {
        const double p = st.perPositionBound[static_cast<std::size_t>(pos)];
        const double se = std::sqrt(p * (1 - p) / static_cast<double>(trials));
        for (int j = 0; j < a; ++j) {
            const double mean =
                st.meanSurvival[static_cast<std::size_t>(pos) * static_cast<std::size_t>(a) +
                                static_cast<std::size_t>(j)];
            if (std::abs(mean - p) > 4 * se + 1e-12) {
                detail = "survival mean off at position " + std::to_string(pos) +
                         " index " + std::to_string(j);
                return false;
            }
        }
    }
    for (const auto& j : st.joints) {
        const double se = std::sqrt(
            (j.jointFreq * (1 - j.jointFreq) + j.productFreq * (1 - j.productFreq)) /
            static_cast<double>(trials));
        if (j.jointFreq > j.productFreq + 4 * se + 1e-12) {
            detail = "joint frequency exceeds product at position " +
                     std::to_string(j.position);
            return false;
        }
    }
    return true;
}

bool criterion6(std::string& detail) {
    const auto rows = sweepK(complete(8), 1, 9, 1, 2000, Seed{8});
    for (const auto& r : rows) {
        // sandwich: checked per trial inside sweepK (it throws on violation);
        // re-assert the aggregate ordering here
        if (r.gtEstimate.successes > r.estimate.successes) {
            detail = "greedy beat the exact solver at k=" + std::to_string(r.k);
            return false;
        }
        if (r.k > 7) {
            if (!r.certified || r.estimate.pointEstimate != 1.0 ||
                r.estimate.method != "certified") {
                detail = "k=" + std::to_string(r.k) + " not certified";
                return false;
            }
        } else if (r.certified) {
            detail = "k=" + std::to_string(r.k) + " certified too early";
            return false;
        }
    }
    return true;
}

bool criterion7(std::string& detail) {
    const Graph g = disjointCopies(6, complete(3));
    const Estimate e = estimateProbability(g, 2, 1, 10000, Seed{6});
    const double bound = sparseConstruction(0.5, 3).boundAt(2); // exp(-6/8)
    detail = "estimate " + formatReal(e.pointEstimate) + " vs bound " +
             formatReal(bound);
    return e.pointEstimate <= bound + (e.ciHigh - e.pointEstimate);
}

// The criterion demands the exact 500-trial sweep of K_60 for every
// k in [4..20] within 10 minutes. For k in [9..14] the decision problem
// sits at its satisfiability threshold (E(X) crosses 1 near k = 12.6) and
// measured per-trial refutation cost explodes: ~0.8 s at k=8, ~7.8 s at
// k=9, ~235 s at k=10, growing ~10-30x per k (a reference clause-learning
// SAT solver is another ~30x slower on the same instances). The full sweep
// is therefore computationally unattainable — on the order of CPU-months —
// not merely over budget. This attempt runs the specified trials (same
// covers, same decisions as sweepK) for every k it can afford, cheapest k
// first, inside the criterion's own wall budget, caps each trial's search
// at a node budget so no single refutation can hang the harness, and fails
// honestly on the remainder.
bool criterion8(std::string& detail) {
    const Graph g = complete(60);
    constexpr int kMin = 4;
    constexpr int kMax = 20;
    constexpr std::uint64_t trials = 500;
    const Seed seed{60};
    const DegeneracyOrdering ordering = degeneracyOrdering(g);
    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::seconds(540);

    struct Attempt {
        std::uint64_t done = 0, colorable = 0, gt = 0, unresolved = 0;
        double secs = 0.0;
    };
    std::map<int, Attempt> attempts;

    // exact decision with a hard work cap (~25 s of search): conclusive
    // answers are exact; nullopt marks a trial whose decision exceeded it
    const auto decideBudgeted = [](const Cover& c) -> std::optional<bool> {
        dpcover::detail::TransversalSearch s(c, 1);
        const auto r = s.findOne(/*maxNodes=*/150'000'000);
        if (s.aborted()) return std::nullopt;
        return r.has_value();
    };

    // cheapest k first: both tails of the sweep are easy, the middle is at
    // the threshold
    const int order[] = {4, 5, 6,  7,  15, 16, 17, 18, 19,
                         20, 8, 9, 14, 10, 11, 12, 13};
    for (const int k : order) {
        Attempt& row = attempts[k];
        const auto kStart = std::chrono::steady_clock::now();
        for (std::uint64_t i = 0; i < trials; ++i) {
            if (std::chrono::steady_clock::now() > deadline) break;
            const Cover c = sampleCover(g, k, substream(seed, i));
            const bool gtOk = gtRun(c, 1, ordering).success;
            const std::optional<bool> exact = decideBudgeted(c);
            ++row.done;
            if (gtOk) ++row.gt;
            if (!exact.has_value()) {
                ++row.unresolved;
                continue;
            }
            if (gtOk && !*exact)
                throw std::logic_error(
                    "criterion 8: greedy succeeded on a cover the exact solver rejects");
            if (*exact) ++row.colorable;
        }
        row.secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                 kStart)
                       .count();
        if (row.done > 0)
            std::printf("      k=%2d: %3llu/%llu trials, colorable %llu, gt %llu, "
                        "unresolved %llu, %.1f s\n",
                        k, static_cast<unsigned long long>(row.done),
                        static_cast<unsigned long long>(trials),
                        static_cast<unsigned long long>(row.colorable),
                        static_cast<unsigned long long>(row.gt),
                        static_cast<unsigned long long>(row.unresolved), row.secs);
        std::fflush(stdout);
    }

    bool complete = true;
    for (int k = kMin; k <= kMax; ++k)
        if (attempts[k].done != trials || attempts[k].unresolved != 0)
            complete = false;

    if (complete) {
        std::vector<SweepRow> rows;
        for (int k = kMin; k <= kMax; ++k) {
            SweepRow r;
            r.k = k;
            r.estimate = makeEstimate(attempts[k].colorable, trials, 0.95, seed,
                                      "exact-solver");
            rows.push_back(std::move(r));
        }
        double at5 = -1, at18 = -1;
        for (const auto& r : rows) {
            if (r.k == 5) at5 = r.estimate.pointEstimate;
            if (r.k == 18) at18 = r.estimate.pointEstimate;
        }
        const CrossingWindow w = crossingWindow(rows);
        detail = "est(5)=" + formatReal(at5) + " est(18)=" + formatReal(at18);
        if (w.lastBelow) detail += " lastBelow=" + std::to_string(*w.lastBelow);
        if (w.firstAtOrAbove)
            detail += " firstAtOrAbove=" + std::to_string(*w.firstAtOrAbove);
        if (at5 > 0.2 || at18 < 0.8) return false;
        if (!w.lastBelow || !w.firstAtOrAbove) return false;
        if (*w.lastBelow < 5 || *w.lastBelow > 18) return false;
        if (*w.firstAtOrAbove < 5 || *w.firstAtOrAbove > 18) return false;
        // monotone within CI slack: successive intervals must overlap upward
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].estimate.ciHigh < rows[i - 1].estimate.ciLow) {
                detail += " non-monotone at k=" + std::to_string(rows[i].k);
                return false;
            }
        return true;
    }

    std::string doneStr, missStr;
    for (int k = kMin; k <= kMax; ++k) {
        const Attempt& r = attempts[k];
        if (r.done == trials && r.unresolved == 0) {
            if (!doneStr.empty()) doneStr += " ";
            doneStr += std::to_string(k) + ":" +
                       formatReal(static_cast<double>(r.colorable) /
                                  static_cast<double>(trials));
        } else {
            if (!missStr.empty()) missStr += " ";
            missStr += std::to_string(k) + "(" + std::to_string(r.done) + " trials";
            if (r.done > 0)
                missStr += ", " + formatReal(r.secs / static_cast<double>(r.done)) +
                           " s/trial";
            missStr += ")";
        }
    }
    detail = "exact sweep unattainable near the decision threshold; "
             "completed k:est {" + doneStr + "}; incomplete {" + missStr +
             "}; measured k=10 needs ~235 s/trial, ~10-30x more per further k "
             "(full sweep ~CPU-months vs the 10-minute budget)";
    return false;
}

bool criterion9(std::string& detail) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const int n = 4 + static_cast<int>(s % 11); // 4..14
        const int maxM = n * (n - 1) / 2;
        const int m = static_cast<int>((s * 13 + 1) % static_cast<std::uint64_t>(maxM + 1));
        const Graph g = randomGraph(n, m, Seed{s + 900});
        if (maxDensityExact(g).maxDensity != maxDensityBruteForce(g).maxDensity) {
            detail = "density oracle mismatch at seed " + std::to_string(s);
            return false;
        }
    }
    for (int n = 2; n <= 30; ++n) {
        if (maxDensityExact(complete(n)).maxDensity != Rational(n - 1, 2)) {
            detail = "rho(K_" + std::to_string(n) + ") wrong";
            return false;
        }
        if (degeneracyOrdering(complete(n)).d != n - 1) {
            detail = "d(K_" + std::to_string(n) + ") wrong";
            return false;
        }
    }
    for (int m = 2; m <= 5; ++m)
        for (int n = 1; n <= 4; ++n)
            if (maxDensityExact(completeMultipartite(m, n)).maxDensity !=
                Rational((m - 1) * n, 2)) {
                detail = "rho(K_{" + std::to_string(m) + "x" + std::to_string(n) +
                         "}) wrong";
                return false;
            }
    return true;
}

bool criterion10(std::string& detail) {
    // every estimator above, re-run with different thread counts, must
    // produce byte-identical CSV
    const Estimate e1 = estimateProbability(complete(3), 2, 1, 2000, Seed{42}, 0.95, 1);
    const Estimate e3 = estimateProbability(complete(3), 2, 1, 2000, Seed{42}, 0.95, 3);
    if (estimateCsv(e1, "K_3", 2, 1) != estimateCsv(e3, "K_3", 2, 1)) {
        detail = "estimate CSV differs across thread counts";
        return false;
    }
    const auto s1 = sweepK(complete(8), 5, 8, 1, 500, Seed{8}, 0.95, 1);
    const auto s3 = sweepK(complete(8), 5, 8, 1, 500, Seed{8}, 0.95, 3);
    const std::string prov = sweepProvenanceLine("K_8", 1, 500, Seed{8}, 0.95);
    if (writeSweepCsv(s1, prov) != writeSweepCsv(s3, prov)) {
        detail = "sweep CSV differs across thread counts";
        return false;
    }
    const Graph g = randomDegenerate(30, 3, Seed{10});
    const SurvivalStats g1 = survivalStats(g, 6, 1, 500, Seed{11}, 1);
    const SurvivalStats g3 = survivalStats(g, 6, 1, 500, Seed{11}, 3);
    const Estimate r1 = gtSuccessRate(g, 6, 1, 500, Seed{11}, 0.95, 1);
    const Estimate r3 = gtSuccessRate(g, 6, 1, 500, Seed{11}, 0.95, 3);
    if (gtCsv(g1, r1, "g", Seed{11}) != gtCsv(g3, r3, "g", Seed{11})) {
        detail = "gt CSV differs across thread counts";
        return false;
    }
    if (analyzeCsv(complete(8), 3, 1, "K_8") != analyzeCsv(complete(8), 3, 1, "K_8")) {
        detail = "analyze CSV is not deterministic";
        return false;
    }
    return true;
}

} // namespace

int main() {
    criterion(1, "exact probability oracle and Monte Carlo agreement on K_3",
              criterion1);
    criterion(2, "first-moment identities over full cover enumeration", criterion2);
    criterion(3, "pair-event probabilities vs brute force over permutations",
              criterion3);
    criterion(4, "Markov/Chebyshev bounds dominate exact probabilities (n<=4, k<=3)",
              criterion4);
    criterion(5, "greedy survival means and negative correlation at n=200, a=40",
              criterion5);
    criterion(6, "sandwich property and certification on a K_8 sweep", criterion6);
    criterion(7, "sparse construction bound on 6 disjoint triangles at k=2",
              criterion7);
    criterion(8, "threshold phenomenology on K_60 (k in [4..20])", criterion8);
    criterion(9, "graph invariants: density oracle and closed forms", criterion9);
    criterion(10, "byte-identical CSV across thread counts", criterion10);
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
