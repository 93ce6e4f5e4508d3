#ifndef DPCOVER_RNG_HPP
#define DPCOVER_RNG_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

namespace dpcover {

/// Reproducibility handle: all randomness in the library is a pure
/// function of a Seed plus substream indices.
struct Seed {
    std::uint64_t value = 0;
};

namespace detail {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Derive an independent substream seed from (seed, index). Counter-based:
/// the result depends only on the pair, never on evaluation order, so
/// parallel consumers get identical streams.
inline Seed substream(Seed s, std::uint64_t index) {
    std::uint64_t h = detail::mix64(s.value ^ 0x6a09e667f3bcc909ULL);
    h = detail::mix64(h + index);
    return Seed{h};
}

/// Counter-based generator: output i is mix64(key + i * odd-constant),
/// so the stream is random-access and stateless apart from the counter.
class Rng {
public:
    explicit Rng(Seed s) : key_(s.value) {}

    std::uint64_t next() {
        return detail::mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
    }

    /// Unbiased draw from [0, bound). Rejects the partial top range of the
    /// 64-bit output so every residue is exactly equally likely.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Fisher-Yates shuffle; uniform over all permutations.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Uniform b-element subset of [0, a), returned sorted.
    std::vector<int> subset(int a, int b) {
        std::vector<int> pool(static_cast<std::size_t>(a));
        for (int i = 0; i < a; ++i) pool[static_cast<std::size_t>(i)] = i;
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(b));
        for (int i = 0; i < b; ++i) {
            std::size_t j = static_cast<std::size_t>(below(static_cast<std::uint64_t>(a - i)));
            out.push_back(pool[j]);
            pool[j] = pool[static_cast<std::size_t>(a - 1 - i)];
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace dpcover

#endif // DPCOVER_RNG_HPP
