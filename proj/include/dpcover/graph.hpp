#ifndef DPCOVER_GRAPH_HPP
#define DPCOVER_GRAPH_HPP

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dpcover/errors.hpp"
#include "dpcover/rng.hpp"

namespace dpcover {

/// Immutable simple graph. Vertices are 0..n-1. The edge list is ordered
/// and the order is part of the value: covers attach one permutation per
/// edge position, so two graphs with equal edge sets but different edge
/// order compare unequal.
class Graph {
public:
    Graph() : n_(0) {}

    Graph(int n, std::vector<std::pair<int, int>> edges, std::string name = "")
        : n_(n), edges_(std::move(edges)), name_(std::move(name)) {
        if (n_ < 0) throw UsageError("Graph: negative vertex count");
        std::set<std::pair<int, int>> seen;
        for (const auto& [u, v] : edges_) {
            if (u < 0 || v >= n_ || u >= v)
                throw UsageError("Graph: edge (" + std::to_string(u) + "," +
                                 std::to_string(v) + ") violates 0 <= u < v < n");
            if (!seen.insert({u, v}).second)
                throw UsageError("Graph: repeated edge (" + std::to_string(u) + "," +
                                 std::to_string(v) + ")");
        }
        adj_.assign(static_cast<std::size_t>(n_), {});
        incident_.assign(static_cast<std::size_t>(n_), {});
        for (int j = 0; j < static_cast<int>(edges_.size()); ++j) {
            const auto& [u, v] = edges_[static_cast<std::size_t>(j)];
            adj_[static_cast<std::size_t>(u)].push_back(v);
            adj_[static_cast<std::size_t>(v)].push_back(u);
            incident_[static_cast<std::size_t>(u)].push_back(j);
            incident_[static_cast<std::size_t>(v)].push_back(j);
        }
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::string& name() const { return name_; }

    const std::vector<int>& neighbors(int v) const {
        return adj_[static_cast<std::size_t>(v)];
    }
    /// Edge positions incident to v.
    const std::vector<int>& incidentEdges(int v) const {
        return incident_[static_cast<std::size_t>(v)];
    }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }
    bool operator!=(const Graph& o) const { return !(*this == o); }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::string name_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> incident_;
};

/// K_q with edges in lexicographic order.
inline Graph complete(int q) {
    if (q < 1) throw UsageError("complete: q must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v) edges.emplace_back(u, v);
    return Graph(q, std::move(edges), "K_" + std::to_string(q));
}

/// K_{m x n}: m parts of size n; vertex v belongs to part v / n.
inline Graph completeMultipartite(int m, int n) {
    if (m < 2) throw UsageError("completeMultipartite: need at least 2 parts");
    if (n < 1) throw UsageError("completeMultipartite: part size must be >= 1");
    std::vector<std::pair<int, int>> edges;
    const int total = m * n;
    for (int u = 0; u < total; ++u)
        for (int v = u + 1; v < total; ++v)
            if (u / n != v / n) edges.emplace_back(u, v);
    return Graph(total, std::move(edges),
                 "K_" + std::to_string(m) + "x" + std::to_string(n));
}

/// tG: copy r occupies the vertex block [r*n, (r+1)*n); edges copy-major.
inline Graph disjointCopies(int t, const Graph& base) {
    if (t < 1) throw UsageError("disjointCopies: t must be >= 1");
    const int n = base.n();
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(t) * base.edges().size());
    for (int r = 0; r < t; ++r)
        for (const auto& [u, v] : base.edges())
            edges.emplace_back(r * n + u, r * n + v);
    return Graph(t * n, std::move(edges),
                 std::to_string(t) + "(" + base.name() + ")");
}

/// P_n, the path v0-v1-...-v(n-1).
inline Graph path(int n) {
    if (n < 1) throw UsageError("path: n must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, std::move(edges), "P_" + std::to_string(n));
}

/// Uniform over all graphs with n vertices and exactly m edges
/// (a uniform m-subset of the vertex pairs); edges sorted lexicographically.
inline Graph randomGraph(int n, int m, Seed seed) {
    if (n < 0) throw UsageError("randomGraph: negative n");
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > pairs) throw UsageError("randomGraph: edge count out of range");
    std::vector<std::pair<int, int>> all;
    all.reserve(static_cast<std::size_t>(pairs));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
    Rng rng(seed);
    // partial Fisher-Yates: the first m slots are a uniform m-subset
    for (int i = 0; i < m; ++i) {
        std::size_t j = static_cast<std::size_t>(i) +
                        static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(pairs - i)));
        std::swap(all[static_cast<std::size_t>(i)], all[j]);
    }
    all.resize(static_cast<std::size_t>(m));
    std::sort(all.begin(), all.end());
    return Graph(n, std::move(all),
                 "G(" + std::to_string(n) + "," + std::to_string(m) + ")");
}

/// Random graph with degeneracy at most d: vertex i picks min(i, d)
/// distinct earlier neighbors uniformly. For n > d every back degree of
/// the identity order is exactly min(i, d), so the degeneracy is exactly d.
inline Graph randomDegenerate(int n, int d, Seed seed) {
    if (n < 1 || d < 0) throw UsageError("randomDegenerate: bad parameters");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(i)));
        const int back = std::min(i, d);
        std::vector<int> picks = rng.subset(i, back);
        for (int u : picks) edges.emplace_back(u, i);
    }
    std::sort(edges.begin(), edges.end());
    return Graph(n, std::move(edges),
                 "D(" + std::to_string(n) + "," + std::to_string(d) + ")");
}

/// Smallest-last ordering: repeatedly delete a minimum-degree vertex
/// (ties by smallest id) and reverse the deletion sequence. backDegrees[i]
/// is the number of neighbors of order[i] among order[0..i-1]; d is their
/// maximum and equals the degeneracy.
struct DegeneracyOrdering {
    std::vector<int> order;
    std::vector<int> backDegrees;
    int d = 0;
};

inline DegeneracyOrdering degeneracyOrdering(const Graph& g) {
    const int n = g.n();
    std::vector<int> deg(static_cast<std::size_t>(n));
    std::vector<bool> removed(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);

    std::set<std::pair<int, int>> queue; // (degree, vertex)
    for (int v = 0; v < n; ++v) queue.insert({deg[static_cast<std::size_t>(v)], v});

    std::vector<int> deletion;
    deletion.reserve(static_cast<std::size_t>(n));
    int d = 0;
    while (!queue.empty()) {
        auto [dv, v] = *queue.begin();
        queue.erase(queue.begin());
        d = std::max(d, dv);
        removed[static_cast<std::size_t>(v)] = true;
        deletion.push_back(v);
        for (int w : g.neighbors(v)) {
            if (removed[static_cast<std::size_t>(w)]) continue;
            queue.erase({deg[static_cast<std::size_t>(w)], w});
            --deg[static_cast<std::size_t>(w)];
            queue.insert({deg[static_cast<std::size_t>(w)], w});
        }
    }

    DegeneracyOrdering out;
    out.order.assign(deletion.rbegin(), deletion.rend());
    out.backDegrees.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(out.order[static_cast<std::size_t>(i)])] = i;
    for (int i = 0; i < n; ++i) {
        int v = out.order[static_cast<std::size_t>(i)];
        int back = 0;
        for (int w : g.neighbors(v))
            if (pos[static_cast<std::size_t>(w)] < i) ++back;
        out.backDegrees[static_cast<std::size_t>(i)] = back;
    }
    out.d = d;
    return out;
}

} // namespace dpcover

#endif // DPCOVER_GRAPH_HPP
