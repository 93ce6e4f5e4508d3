#ifndef DPCOVER_TRANSVERSAL_HPP
#define DPCOVER_TRANSVERSAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "dpcover/cover.hpp"
#include "dpcover/errors.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/rational.hpp"

namespace dpcover {

/// One list index per vertex.
struct Transversal {
    std::vector<int> choice;
};

/// One b-subset of list indices per vertex (each sorted ascending).
struct BFoldTransversal {
    std::vector<std::vector<int>> choice;
};

/// Index lists larger than this cannot be represented by the solver's
/// bitmask state.
constexpr int kMaxSolverFold = 64;

/// Exact-count searches are refused above this many raw outcomes.
constexpr double kMaxCountOutcomes = 1e8;

/// True iff no edge of the cover graph joins two chosen vertices:
/// perms[j](choice[u]) != choice[v] for every edge j = (u,v).
inline bool isIndependent(const Cover& c, const Transversal& t) {
    if (static_cast<int>(t.choice.size()) != c.graph.n())
        throw UsageError("isIndependent: transversal size mismatch");
    for (std::size_t j = 0; j < c.perms.size(); ++j) {
        const auto& [u, v] = c.graph.edges()[j];
        const int iu = t.choice[static_cast<std::size_t>(u)];
        const int iv = t.choice[static_cast<std::size_t>(v)];
        if (iu < 0 || iu >= c.k || iv < 0 || iv >= c.k)
            throw UsageError("isIndependent: index out of range");
        if (c.perms[j][static_cast<std::size_t>(iu)] == iv) return false;
    }
    return true;
}

/// b-fold analogue: perms[j](S_u) and S_v must be disjoint on every edge.
inline bool isIndependentBFold(const Cover& c, const BFoldTransversal& t) {
    if (static_cast<int>(t.choice.size()) != c.graph.n())
        throw UsageError("isIndependentBFold: transversal size mismatch");
    for (std::size_t j = 0; j < c.perms.size(); ++j) {
        const auto& [u, v] = c.graph.edges()[j];
        std::uint64_t imageMask = 0;
        for (int i : t.choice[static_cast<std::size_t>(u)])
            imageMask |= std::uint64_t{1} << c.perms[j][static_cast<std::size_t>(i)];
        for (int i : t.choice[static_cast<std::size_t>(v)])
            if (imageMask & (std::uint64_t{1} << i)) return false;
    }
    return true;
}

namespace detail {

// Backtracking over the degeneracy ordering with dynamic
// fewest-survivors-first vertex selection (ties by vertex id). Used both
// to find one independent (b-fold) transversal and to count them all.
class TransversalSearch {
public:
    TransversalSearch(const Cover& c, int b) : cover_(c), b_(b) {
        if (c.k > kMaxSolverFold)
            throw GuardExceeded("transversal solver: k > " +
                                std::to_string(kMaxSolverFold));
        if (b < 1 || b > c.k)
            throw UsageError("transversal solver: need 1 <= b <= k");
        const int n = c.graph.n();
        full_ = (c.k == 64) ? ~std::uint64_t{0}
                            : (std::uint64_t{1} << c.k) - 1;
        removed_.assign(static_cast<std::size_t>(n), 0);
        assigned_.assign(static_cast<std::size_t>(n), false);
        choice_.assign(static_cast<std::size_t>(n), {});
        // forward/backward image tables per edge
        inv_.resize(c.perms.size());
        for (std::size_t j = 0; j < c.perms.size(); ++j) {
            inv_[j].assign(static_cast<std::size_t>(c.k), 0);
            for (int i = 0; i < c.k; ++i)
                inv_[j][static_cast<std::size_t>(c.perms[j][static_cast<std::size_t>(i)])] = i;
        }
    }

    /// maxNodes = 0 means unlimited. When a budget is given and exhausted,
    /// the returned nullopt is inconclusive — check aborted().
    std::optional<BFoldTransversal> findOne(std::uint64_t maxNodes = 0) {
        found_.reset();
        countMode_ = false;
        nodesLeft_ = (maxNodes == 0) ? ~std::uint64_t{0} : maxNodes;
        aborted_ = false;
        search(0);
        return found_;
    }

    /// True iff the last findOne call ran out of its node budget.
    bool aborted() const { return aborted_; }

    std::uint64_t countAll() {
        count_ = 0;
        countMode_ = true;
        nodesLeft_ = ~std::uint64_t{0};
        aborted_ = false;
        search(0);
        return count_;
    }

private:
    // image of index i when crossing edge j away from vertex `from`
    int image(int j, int from, int i) const {
        const auto& [u, v] = cover_.graph.edges()[static_cast<std::size_t>(j)];
        if (from == u) return cover_.perms[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        (void)v;
        return inv_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }

    void search(int depth) {
        if (!countMode_ && (found_ || aborted_)) return;
        if (nodesLeft_ == 0) {
            aborted_ = true;
            return;
        }
        --nodesLeft_;
        const int n = cover_.graph.n();
        if (depth == n) {
            if (countMode_) {
                ++count_;
            } else {
                BFoldTransversal t;
                t.choice = choice_;
                found_ = std::move(t);
            }
            return;
        }
        // fewest survivors first; fail fast when someone is starved
        int best = -1;
        int bestCount = cover_.k + 1;
        for (int v = 0; v < n; ++v) {
            if (assigned_[static_cast<std::size_t>(v)]) continue;
            const int survivors =
                __builtin_popcountll(full_ & ~removed_[static_cast<std::size_t>(v)]);
            if (survivors < b_) return;
            if (survivors < bestCount) {
                bestCount = survivors;
                best = v;
            }
        }
        const int v = best;
        std::vector<int> alive;
        alive.reserve(static_cast<std::size_t>(bestCount));
        for (int i = 0; i < cover_.k; ++i)
            if (!(removed_[static_cast<std::size_t>(v)] & (std::uint64_t{1} << i)))
                alive.push_back(i);

        std::vector<int> pick(static_cast<std::size_t>(b_));
        enumerateSubsets(v, alive, pick, 0, 0, depth);
    }

    void enumerateSubsets(int v, const std::vector<int>& alive,
                          std::vector<int>& pick, int pos, int from, int depth) {
        if (!countMode_ && (found_ || aborted_)) return;
        if (pos == b_) {
            assign(v, pick, depth);
            return;
        }
        for (int idx = from; idx <= static_cast<int>(alive.size()) - (b_ - pos); ++idx) {
            pick[static_cast<std::size_t>(pos)] = alive[static_cast<std::size_t>(idx)];
            enumerateSubsets(v, alive, pick, pos + 1, idx + 1, depth);
        }
    }

    void assign(int v, const std::vector<int>& pick, int depth) {
        assigned_[static_cast<std::size_t>(v)] = true;
        choice_[static_cast<std::size_t>(v)] = pick;
        std::vector<std::pair<int, std::uint64_t>> undo;
        for (int j : cover_.graph.incidentEdges(v)) {
            const auto& [a, bvert] = cover_.graph.edges()[static_cast<std::size_t>(j)];
            const int w = (a == v) ? bvert : a;
            if (assigned_[static_cast<std::size_t>(w)]) continue;
            std::uint64_t mask = 0;
            for (int i : pick) mask |= std::uint64_t{1} << image(j, v, i);
            const std::uint64_t delta = mask & ~removed_[static_cast<std::size_t>(w)];
            if (delta) {
                removed_[static_cast<std::size_t>(w)] |= delta;
                undo.emplace_back(w, delta);
            }
        }
        search(depth + 1);
        for (const auto& [w, delta] : undo) removed_[static_cast<std::size_t>(w)] &= ~delta;
        assigned_[static_cast<std::size_t>(v)] = false;
    }

    const Cover& cover_;
    int b_;
    std::uint64_t full_;
    std::vector<std::uint64_t> removed_;
    std::vector<bool> assigned_;
    std::vector<std::vector<int>> choice_;
    std::vector<std::vector<int>> inv_;
    bool countMode_ = false;
    std::uint64_t nodesLeft_ = ~std::uint64_t{0};
    bool aborted_ = false;
    std::uint64_t count_ = 0;
    std::optional<BFoldTransversal> found_;
};

} // namespace detail

/// An independent transversal of c, or nullopt when none exists. The
/// result is re-verified by isIndependent before returning.
inline std::optional<Transversal> findTransversal(const Cover& c) {
    detail::TransversalSearch s(c, 1);
    auto result = s.findOne();
    if (!result) return std::nullopt;
    Transversal t;
    t.choice.reserve(result->choice.size());
    for (const auto& set : result->choice) t.choice.push_back(set.front());
    if (!isIndependent(c, t))
        throw std::logic_error("findTransversal: solver returned a dependent transversal");
    return t;
}

/// An independent b-fold transversal, or nullopt. b > k is rejected.
inline std::optional<BFoldTransversal> findBFoldTransversal(const Cover& c, int b) {
    detail::TransversalSearch s(c, b);
    auto result = s.findOne();
    if (result && !isIndependentBFold(c, *result))
        throw std::logic_error("findBFoldTransversal: solver returned a dependent transversal");
    return result;
}

/// Exact number of independent transversals (the count random variable X
/// evaluated on c). Guarded by k^n <= 1e8.
inline std::uint64_t countTransversals(const Cover& c) {
    if (c.graph.n() * std::log(static_cast<double>(c.k)) >
        std::log(kMaxCountOutcomes))
        throw GuardExceeded("countTransversals: k^n exceeds 1e8");
    detail::TransversalSearch s(c, 1);
    return s.countAll();
}

/// Exact number of independent b-fold transversals. Guarded by
/// C(k,b)^n <= 1e8.
inline std::uint64_t countBFoldTransversals(const Cover& c, int b) {
    const double perVertex = static_cast<double>(binomial(c.k, b));
    if (c.graph.n() * std::log(perVertex) > std::log(kMaxCountOutcomes))
        throw GuardExceeded("countBFoldTransversals: C(k,b)^n exceeds 1e8");
    detail::TransversalSearch s(c, b);
    return s.countAll();
}

/// Exact fraction of Omega_{G,k} admitting an independent b-fold
/// transversal, with denominator (k!)^m. Subject to the enumeration guard.
inline Rational exactColorabilityProbability(const Graph& g, int k, int b) {
    if (b < 1 || b > k)
        throw UsageError("exactColorabilityProbability: need 1 <= b <= k");
    std::uint64_t colorable = 0;
    std::uint64_t total = 0;
    enumerateCovers(g, k, [&](const Cover& c) {
        ++total;
        if (findBFoldTransversal(c, b)) ++colorable;
    });
    return Rational(colorable, total);
}

} // namespace dpcover

#endif // DPCOVER_TRANSVERSAL_HPP
