#ifndef DPCOVER_COVER_HPP
#define DPCOVER_COVER_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpcover/errors.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/rng.hpp"

namespace dpcover {

/// Full k-fold cover: one permutation of {0..k-1} per edge, attached by
/// edge position and oriented from the smaller endpoint. For edge
/// j = (u,v) with u < v, list vertex (u,i) is matched to (v, perms[j][i]).
struct Cover {
    Graph graph;
    int k = 0;
    std::vector<std::vector<int>> perms;
};

struct ValidationResult {
    bool ok = true;
    std::string reason;
    explicit operator bool() const { return ok; }
};

/// True iff perms has one entry per edge and every entry is a bijection
/// on {0..k-1}; failures carry a diagnostic reason.
inline ValidationResult validateCover(const Cover& c) {
    if (c.k < 1) return {false, "fold count k must be >= 1"};
    if (static_cast<int>(c.perms.size()) != c.graph.m())
        return {false, "expected " + std::to_string(c.graph.m()) +
                           " permutations, got " + std::to_string(c.perms.size())};
    for (std::size_t j = 0; j < c.perms.size(); ++j) {
        const auto& p = c.perms[j];
        if (static_cast<int>(p.size()) != c.k)
            return {false, "edge " + std::to_string(j) + ": permutation has size " +
                               std::to_string(p.size()) + ", expected " +
                               std::to_string(c.k)};
        std::vector<bool> seen(static_cast<std::size_t>(c.k), false);
        for (int image : p) {
            if (image < 0 || image >= c.k || seen[static_cast<std::size_t>(image)])
                return {false, "edge " + std::to_string(j) +
                                   ": images are not a bijection on {0.." +
                                   std::to_string(c.k - 1) + "}"};
            seen[static_cast<std::size_t>(image)] = true;
        }
    }
    return {};
}

/// Uniform element of Omega_{G,k}: each edge's permutation is drawn by an
/// unbiased shuffle from a substream keyed by (seed, edge position), so
/// the result is a pure function of (g, k, seed) regardless of evaluation
/// order or parallelism.
inline Cover sampleCover(const Graph& g, int k, Seed seed) {
    if (k < 1) throw UsageError("sampleCover: k must be >= 1");
    Cover c{g, k, {}};
    c.perms.reserve(static_cast<std::size_t>(g.m()));
    for (int j = 0; j < g.m(); ++j) {
        std::vector<int> p(static_cast<std::size_t>(k));
        std::iota(p.begin(), p.end(), 0);
        Rng rng(substream(seed, static_cast<std::uint64_t>(j)));
        rng.shuffle(p);
        c.perms.push_back(std::move(p));
    }
    return c;
}

constexpr std::uint64_t kMaxEnumeratedCovers = 10'000'000;

/// |Omega_{G,k}| = (k!)^m; throws GuardExceeded above kMaxEnumeratedCovers.
inline std::uint64_t coverSpaceSize(const Graph& g, int k) {
    if (k < 1) throw UsageError("coverSpaceSize: k must be >= 1");
    std::uint64_t kFact = 1;
    for (int i = 2; i <= k; ++i) kFact *= static_cast<std::uint64_t>(i);
    std::uint64_t total = 1;
    for (int j = 0; j < g.m(); ++j) {
        if (total > kMaxEnumeratedCovers / kFact)
            throw GuardExceeded("coverSpaceSize: (k!)^m exceeds " +
                                std::to_string(kMaxEnumeratedCovers));
        total *= kFact;
    }
    return total;
}

namespace detail {

// Lexicographic unranking of a permutation of {0..k-1}.
inline std::vector<int> unrankPermutation(std::uint64_t rank, int k) {
    std::vector<std::uint64_t> fact(static_cast<std::size_t>(k), 1);
    for (int i = 1; i < k; ++i)
        fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] *
                                            static_cast<std::uint64_t>(i);
    std::vector<int> pool(static_cast<std::size_t>(k));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        const std::uint64_t f = fact[static_cast<std::size_t>(i)];
        const std::size_t idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        out.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return out;
}

} // namespace detail

/// Visit every element of Omega_{G,k} exactly once, in mixed-radix order
/// over per-edge permutation ranks (edge 0 is the most significant digit).
template <typename F>
void enumerateCovers(const Graph& g, int k, F&& visit) {
    const std::uint64_t total = coverSpaceSize(g, k); // throws over guard
    std::uint64_t kFact = 1;
    for (int i = 2; i <= k; ++i) kFact *= static_cast<std::uint64_t>(i);
    const int m = g.m();
    Cover c{g, k, std::vector<std::vector<int>>(static_cast<std::size_t>(m))};
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        for (int j = m - 1; j >= 0; --j) {
            c.perms[static_cast<std::size_t>(j)] =
                detail::unrankPermutation(rest % kFact, k);
            rest /= kFact;
        }
        visit(c);
    }
}

/// Cover of `sub` induced by `c` under the embedding vertexMap: edge (u,v)
/// of sub (u < v) takes the permutation of the image edge, inverted when
/// the embedding reverses the orientation.
inline Cover subcover(const Cover& c, const Graph& sub,
                      const std::vector<int>& vertexMap) {
    if (static_cast<int>(vertexMap.size()) != sub.n())
        throw UsageError("subcover: vertexMap size mismatch");
    const Graph& big = c.graph;
    std::vector<bool> used(static_cast<std::size_t>(big.n()), false);
    for (int img : vertexMap) {
        if (img < 0 || img >= big.n())
            throw UsageError("subcover: vertexMap image out of range");
        if (used[static_cast<std::size_t>(img)])
            throw UsageError("subcover: vertexMap is not injective");
        used[static_cast<std::size_t>(img)] = true;
    }
    // locate each image edge by its position in the host edge list
    std::vector<std::vector<int>> perms;
    perms.reserve(sub.edges().size());
    for (const auto& [u, v] : sub.edges()) {
        int mu = vertexMap[static_cast<std::size_t>(u)];
        int mv = vertexMap[static_cast<std::size_t>(v)];
        const bool flipped = mu > mv;
        if (flipped) std::swap(mu, mv);
        int pos = -1;
        for (int j : big.incidentEdges(mu)) {
            if (big.edges()[static_cast<std::size_t>(j)] == std::make_pair(mu, mv)) {
                pos = j;
                break;
            }
        }
        if (pos < 0)
            throw UsageError("subcover: edge (" + std::to_string(u) + "," +
                             std::to_string(v) + ") does not embed into the host graph");
        const auto& p = c.perms[static_cast<std::size_t>(pos)];
        if (!flipped) {
            perms.push_back(p);
        } else {
            std::vector<int> inv(p.size());
            for (int i = 0; i < static_cast<int>(p.size()); ++i)
                inv[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = i;
            perms.push_back(std::move(inv));
        }
    }
    return Cover{sub, c.k, std::move(perms)};
}

} // namespace dpcover

#endif // DPCOVER_COVER_HPP
