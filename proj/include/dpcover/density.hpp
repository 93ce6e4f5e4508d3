#ifndef DPCOVER_DENSITY_HPP
#define DPCOVER_DENSITY_HPP

#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include "dpcover/errors.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/rational.hpp"

namespace dpcover {

/// density = m/n of the whole graph, maxDensity = rho(G), witness a vertex
/// set whose induced density equals maxDensity exactly.
struct DensityReport {
    Rational density;
    Rational maxDensity;
    std::vector<int> witness;
};

namespace detail {

// Dinic max-flow with int64 capacities.
class MaxFlow {
public:
    explicit MaxFlow(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

    void addEdge(int from, int to, std::int64_t cap) {
        edges_.push_back({to, head_[static_cast<std::size_t>(from)], cap});
        head_[static_cast<std::size_t>(from)] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[static_cast<std::size_t>(to)], 0});
        head_[static_cast<std::size_t>(to)] = static_cast<int>(edges_.size()) - 1;
    }

    std::int64_t run(int s, int t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            std::int64_t f;
            while ((f = dfs(s, t, INT64_MAX)) > 0) flow += f;
        }
        return flow;
    }

    /// Nodes reachable from s in the residual graph (call after run()).
    std::vector<bool> sourceSide(int s) const {
        std::vector<bool> seen(head_.size(), false);
        std::queue<int> q;
        q.push(s);
        seen[static_cast<std::size_t>(s)] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(v)]; e != -1;
                 e = edges_[static_cast<std::size_t>(e)].next) {
                const Edge& ed = edges_[static_cast<std::size_t>(e)];
                if (ed.cap > 0 && !seen[static_cast<std::size_t>(ed.to)]) {
                    seen[static_cast<std::size_t>(ed.to)] = true;
                    q.push(ed.to);
                }
            }
        }
        return seen;
    }

private:
    struct Edge {
        int to;
        int next;
        std::int64_t cap;
    };

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        q.push(s);
        level_[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(v)]; e != -1;
                 e = edges_[static_cast<std::size_t>(e)].next) {
                const Edge& ed = edges_[static_cast<std::size_t>(e)];
                if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] < 0) {
                    level_[static_cast<std::size_t>(ed.to)] =
                        level_[static_cast<std::size_t>(v)] + 1;
                    q.push(ed.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }

    std::int64_t dfs(int v, int t, std::int64_t limit) {
        if (v == t) return limit;
        for (int& e = iter_[static_cast<std::size_t>(v)]; e != -1;
             e = edges_[static_cast<std::size_t>(e)].next) {
            Edge& ed = edges_[static_cast<std::size_t>(e)];
            if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] ==
                                  level_[static_cast<std::size_t>(v)] + 1) {
                std::int64_t f = dfs(ed.to, t, std::min(limit, ed.cap));
                if (f > 0) {
                    ed.cap -= f;
                    edges_[static_cast<std::size_t>(e ^ 1)].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }

    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
    std::vector<Edge> edges_;
};

inline Rational inducedDensity(const Graph& g, const std::vector<int>& subset) {
    std::vector<bool> in(static_cast<std::size_t>(g.n()), false);
    for (int v : subset) in[static_cast<std::size_t>(v)] = true;
    long long e = 0;
    for (const auto& [u, v] : g.edges())
        if (in[static_cast<std::size_t>(u)] && in[static_cast<std::size_t>(v)]) ++e;
    return Rational(e, static_cast<long long>(subset.size()));
}

// Decide whether some vertex subset has induced density strictly above
// num/den via Goldberg's min-cut construction; on success returns the
// source-side witness.
inline bool denserThan(const Graph& g, std::int64_t num, std::int64_t den,
                       std::vector<int>& witness) {
    const int n = g.n();
    const std::int64_t m = g.m();
    const int s = n;
    const int t = n + 1;
    MaxFlow flow(n + 2);
    for (int v = 0; v < n; ++v) {
        flow.addEdge(s, v, m * den);
        flow.addEdge(v, t, m * den + 2 * num - static_cast<std::int64_t>(g.degree(v)) * den);
    }
    for (const auto& [u, v] : g.edges()) {
        flow.addEdge(u, v, den);
        flow.addEdge(v, u, den);
    }
    const std::int64_t cut = flow.run(s, t);
    if (cut >= m * n * den) return false;
    std::vector<bool> side = flow.sourceSide(s);
    witness.clear();
    for (int v = 0; v < n; ++v)
        if (side[static_cast<std::size_t>(v)]) witness.push_back(v);
    return !witness.empty();
}

} // namespace detail

/// Exact maximum density rho(G) over induced subgraphs (deleting edges
/// never raises density, so this equals the maximum over all subgraphs).
/// Integer binary search over density guesses c/N with N = n(n-1): any two
/// achievable densities differ by at least 1/N, so once the bracket is
/// below 1/N the best witness found is optimal.
inline DensityReport maxDensityExact(const Graph& g) {
    DensityReport rep;
    const int n = g.n();
    if (n == 0) throw UsageError("maxDensityExact: empty graph");
    rep.density = Rational(g.m(), n);
    if (g.m() == 0) {
        rep.maxDensity = 0;
        rep.witness = {0};
        return rep;
    }
    const std::int64_t N = static_cast<std::int64_t>(n) * std::max(1, n - 1);
    // whole graph is always a witness
    std::vector<int> best(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) best[static_cast<std::size_t>(v)] = v;
    Rational bestDensity = rep.density;

    // lo/N is known beaten (a witness has density > lo/N), hi/N is not;
    // m/n * N = m(n-1) exactly
    std::int64_t lo = static_cast<std::int64_t>(g.m()) * (n - 1) - 1;
    std::int64_t hi = static_cast<std::int64_t>(n) * N / 2 + 1; // above (n-1)/2
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        std::vector<int> witness;
        if (detail::denserThan(g, mid, N, witness)) {
            Rational d = detail::inducedDensity(g, witness);
            if (d > bestDensity) {
                bestDensity = d;
                best = witness;
            }
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // rho lies in (lo/N, hi/N], an interval of width 1/N containing the
    // achieved bestDensity; distinct achievable densities are >= 1/N apart
    rep.maxDensity = bestDensity;
    rep.witness = best;
    return rep;
}

constexpr int kMaxBruteForceVertices = 20;

/// Exhaustive maximum of induced density over all nonempty vertex subsets.
/// Verification oracle for maxDensityExact; rejects n > 20.
inline DensityReport maxDensityBruteForce(const Graph& g) {
    const int n = g.n();
    if (n == 0) throw UsageError("maxDensityBruteForce: empty graph");
    if (n > kMaxBruteForceVertices)
        throw GuardExceeded("maxDensityBruteForce: n > " +
                            std::to_string(kMaxBruteForceVertices));
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : g.edges()) {
        adj[static_cast<std::size_t>(u)] |= 1u << v;
        adj[static_cast<std::size_t>(v)] |= 1u << u;
    }
    long long bestE = 0;
    int bestV = 1;
    std::uint32_t bestMask = 1;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        long long e = 0;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v))
                e += __builtin_popcount(adj[static_cast<std::size_t>(v)] & mask);
        e /= 2;
        const int size = __builtin_popcount(mask);
        if (e * bestV > bestE * size) { // e/size > bestE/bestV
            bestE = e;
            bestV = size;
            bestMask = mask;
        }
    }
    DensityReport rep;
    rep.density = Rational(g.m(), n);
    rep.maxDensity = Rational(bestE, bestV);
    for (int v = 0; v < n; ++v)
        if (bestMask & (1u << v)) rep.witness.push_back(v);
    return rep;
}

} // namespace dpcover

#endif // DPCOVER_DENSITY_HPP
