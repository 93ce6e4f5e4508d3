#ifndef DPCOVER_TESTS_HELPERS_HPP
#define DPCOVER_TESTS_HELPERS_HPP

#include <cstdint>
#include <numeric>
#include <vector>

#include "dpcover/cover.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/transversal.hpp"

namespace testutil {

/// Cover with the identity permutation on every edge.
inline dpcover::Cover identityCover(const dpcover::Graph& g, int k) {
    dpcover::Cover c{g, k, {}};
    std::vector<int> id(static_cast<std::size_t>(k));
    std::iota(id.begin(), id.end(), 0);
    c.perms.assign(static_cast<std::size_t>(g.m()), id);
    return c;
}

/// Exhaustive check over all k^n transversals. Oracle for the solver.
inline std::uint64_t bruteCountTransversals(const dpcover::Cover& c) {
    const int n = c.graph.n();
    const int k = c.k;
    std::vector<int> choice(static_cast<std::size_t>(n), 0);
    std::uint64_t count = 0;
    for (;;) {
        if (dpcover::isIndependent(c, dpcover::Transversal{choice})) ++count;
        int pos = 0;
        while (pos < n && ++choice[static_cast<std::size_t>(pos)] == k) {
            choice[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return count;
}

inline bool bruteColorable(const dpcover::Cover& c) {
    return bruteCountTransversals(c) > 0;
}

/// Lexicographic rank of a permutation of {0..k-1}.
inline std::uint64_t permRank(const std::vector<int>& p) {
    const int k = static_cast<int>(p.size());
    std::uint64_t rank = 0;
    for (int i = 0; i < k; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < k; ++j)
            if (p[static_cast<std::size_t>(j)] < p[static_cast<std::size_t>(i)]) ++smaller;
        std::uint64_t fact = 1;
        for (int f = 2; f <= k - 1 - i; ++f) fact *= static_cast<std::uint64_t>(f);
        rank += static_cast<std::uint64_t>(smaller) * fact;
    }
    return rank;
}

} // namespace testutil

#endif
