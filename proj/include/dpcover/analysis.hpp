#ifndef DPCOVER_ANALYSIS_HPP
#define DPCOVER_ANALYSIS_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dpcover/density.hpp"
#include "dpcover/errors.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/rational.hpp"

namespace dpcover {

/// Parameters feeding the closed-form moment and bound formulas.
struct MomentParams {
    int n = 0;       // vertex count
    int m = 0;       // edge count
    int k = 1;       // fold count (a in the fractional setting)
    int b = 1;       // selection size
    Rational rho;    // maximum density
    int d = 0;       // degeneracy

    static MomentParams fromGraph(const Graph& g, int k, int b = 1) {
        MomentParams p;
        p.n = g.n();
        p.m = g.m();
        p.k = k;
        p.b = b;
        p.rho = maxDensityExact(g).maxDensity;
        p.d = degeneracyOrdering(g).d;
        return p;
    }
};

/// A numeric bound together with how it was produced. Probability-type
/// bounds are reported after clamping into [0,1]; `clamped` records
/// whether the clamp was active.
struct BoundReport {
    double value = 0.0;
    bool clamped = false;
    std::string provenance;
};

/// E(X) for single transversals: k^n ((k-1)/k)^m, exact.
inline Rational expectedTransversals(const MomentParams& p) {
    if (p.k < 1) throw UsageError("expectedTransversals: k must be >= 1");
    return ratPow(Rational(p.k), p.n) * ratPow(Rational(p.k - 1, p.k), p.m);
}

/// E(X) for b-fold transversals: C(a,b)^n (C(a-b,b)/C(a,b))^m, exact.
/// Zero when a < 2b and m >= 1, since C(a-b,b) = 0.
inline Rational expectedBFoldTransversals(const MomentParams& p) {
    if (p.b < 1 || p.b > p.k)
        throw UsageError("expectedBFoldTransversals: need 1 <= b <= a");
    const BigInt choose = binomial(p.k, p.b);
    const BigInt chooseRest = binomial(p.k - p.b, p.b);
    return ratPow(Rational(choose), p.n) * ratPow(Rational(chooseRest, choose), p.m);
}

enum class PairCase { A, B, C };

/// Probability that a single random matching is compatible with a fixed
/// pair of transversals on one edge, by the pattern of index agreement:
/// case A (both indices agree) -> (k-1)/k; case B (one side agrees)
/// -> (k-2)/k; case C (neither agrees) -> p^2 + 1/(k^2(k-1)).
inline Rational pairCaseProbability(PairCase c, int k) {
    switch (c) {
        case PairCase::A:
            if (k < 1) throw UsageError("pairCaseProbability: k must be >= 1");
            return Rational(k - 1, k);
        case PairCase::B:
            if (k < 2) throw UsageError("pairCaseProbability: case B needs k >= 2");
            return Rational(k - 2, k);
        case PairCase::C: {
            if (k < 2) throw UsageError("pairCaseProbability: case C needs k >= 2");
            const Rational p(k - 1, k);
            return p * p + Rational(1, static_cast<long long>(k) * k * (k - 1));
        }
    }
    throw UsageError("pairCaseProbability: unknown case");
}

/// Cap on the number of agreeing-pair edges given overlap nu:
/// min(C(nu,2), rho*nu), exact.
inline Rational muCap(int nu, const Rational& rho) {
    if (nu < 0) throw UsageError("muCap: nu must be >= 0");
    const Rational pairs = Rational(binomial(nu, 2));
    const Rational byDensity = rho * nu;
    return pairs < byDensity ? pairs : byDensity;
}

namespace detail {

inline double logBinomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// natural log of a positive BigInt
inline double bigLog(const BigInt& x) {
    if (x <= 0) throw UsageError("bigLog: argument must be positive");
    const unsigned bits = boost::multiprecision::msb(x);
    if (bits <= 60) return std::log(static_cast<double>(x));
    const BigInt shifted = x >> (bits - 60);
    return std::log(static_cast<double>(shifted)) +
           static_cast<double>(bits - 60) * std::log(2.0);
}

} // namespace detail

/// ln g(nu) with g(nu) = C(n,nu) k^-nu (1-1/k)^(n-nu) (1+1/(k-1))^mu(nu);
/// -inf outside [0:n]. `withOverlapFactor=false` drops the mu exponent
/// (the binomial-theorem identity sum_nu g(nu) = 1 then holds exactly).
inline double gTermLog(int nu, const MomentParams& p, bool withOverlapFactor = true) {
    if (p.k < 2) throw UsageError("gTermLog: k must be >= 2");
    if (nu < 0 || nu > p.n) return -std::numeric_limits<double>::infinity();
    double log = detail::logBinomial(p.n, nu) - nu * std::log(static_cast<double>(p.k)) +
                 (p.n - nu) * std::log1p(-1.0 / p.k);
    if (withOverlapFactor)
        log += ratToDouble(muCap(nu, p.rho)) * std::log1p(1.0 / (p.k - 1));
    return log;
}

/// g(nu) itself, evaluated in log-space. Zero outside [0:n].
inline double gTerm(int nu, const MomentParams& p) {
    const double l = gTermLog(nu, p);
    return std::isinf(l) ? 0.0 : std::exp(l);
}

/// ln of sum_{nu=lo}^{hi} g(nu); diagnostic access to partial sums of the
/// variance-ratio summation.
inline double gSumLogRange(const MomentParams& p, int lo, int hi) {
    double maxLog = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    for (int nu = std::max(lo, 0); nu <= std::min(hi, p.n); ++nu) {
        logs.push_back(gTermLog(nu, p));
        maxLog = std::max(maxLog, logs.back());
    }
    if (logs.empty() || std::isinf(maxLog))
        return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - maxLog);
    return maxLog + std::log(acc);
}

/// Exact finite-n upper bound on Var(X)/E(X)^2 for single transversals:
/// (1 + 1/(k-1)^3)^(rho n) * sum_nu g(nu) - 1. Every inequality in the
/// chain holds for finite n, so this is a rigorous bound, not an
/// asymptotic one.
inline BoundReport varianceRatioBound(const MomentParams& p) {
    if (p.k < 2) throw UsageError("varianceRatioBound: k must be >= 2");
    if (p.m < 1) throw UsageError("varianceRatioBound: m must be >= 1");
    const double logFactor =
        ratToDouble(p.rho * p.n) *
        std::log1p(1.0 / (static_cast<double>(p.k - 1) * (p.k - 1) * (p.k - 1)));
    const double value = std::exp(logFactor + gSumLogRange(p, 0, p.n)) - 1.0;
    return {value, false, "variance-ratio"};
}

/// Chebyshev: P(X = 0) <= min(1, Var(X)/E(X)^2). Vacuous (rejected) when
/// E(X) = 0.
inline BoundReport chebyshevNonColorBound(const MomentParams& p) {
    if (expectedTransversals(p) == 0)
        throw UsageError("chebyshevNonColorBound: E(X) = 0, bound is vacuous");
    BoundReport r = varianceRatioBound(p);
    r.provenance = "chebyshev";
    if (r.value > 1.0) {
        r.value = 1.0;
        r.clamped = true;
    }
    if (r.value < 0.0) r.value = 0.0;
    return r;
}

/// Markov: P(colorable) <= min(1, E(X)) with the b-fold expectation.
inline BoundReport markovColorBound(const MomentParams& p) {
    const Rational e = expectedBFoldTransversals(p);
    if (e >= 1) return {1.0, true, "markov"};
    return {ratToDouble(e), false, "markov"};
}

/// Union bound on greedy-pass failure: min(1, n exp(-a(1-b/a)^d / 8)),
/// from the tail exp(-E(X_i)/8) with E(X_i) >= a(1-b/a)^d.
inline BoundReport gtFailureBound(const MomentParams& p) {
    if (p.b < 1 || p.b > p.k) throw UsageError("gtFailureBound: need 1 <= b <= a");
    if (p.k < 2) throw UsageError("gtFailureBound: a must be >= 2");
    const double expected =
        p.k * std::pow(1.0 - static_cast<double>(p.b) / p.k, p.d);
    const double logBound = std::log(static_cast<double>(p.n)) - expected / 8.0;
    if (logBound >= 0.0) return {1.0, true, "gt-union-bound"};
    return {std::exp(logBound), false, "gt-union-bound"};
}

/// Disjoint-clique construction keeping colorability probability below
/// epsilon for every k <= q-1: t = ceil(ln(1/eps) ((q-1)!)^C(q,2)) copies
/// of K_q, with bound exp(-t (k!)^-C(q,2)).
struct SparseConstruction {
    int q = 0;
    BigInt copies;       // t
    double logCopies = 0.0; // ln t

    /// exp(-t (k!)^-C(q,2)) for k <= q-1, in log-space.
    double boundAt(int k) const {
        if (k < 1 || k > q - 1)
            throw UsageError("SparseConstruction::boundAt: need 1 <= k <= q-1");
        const double logKFact = std::lgamma(k + 1.0);
        const double cq2 = static_cast<double>(binomial(q, 2));
        return std::exp(-std::exp(logCopies - cq2 * logKFact));
    }
};

inline SparseConstruction sparseConstruction(double epsilon, int q) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw UsageError("sparseConstruction: epsilon must lie in (0,1)");
    if (q < 2) throw UsageError("sparseConstruction: q must be >= 2");
    const double c = std::log(1.0 / epsilon);
    const BigInt factor = boost::multiprecision::pow(
        factorial(q - 1), static_cast<unsigned>(binomial(q, 2)));
    // t = ceil(c * factor), computed with 53 scaled bits of c
    const BigInt scaledC = static_cast<BigInt>(std::llround(std::ldexp(c, 53)));
    BigInt t = (scaledC * factor) >> 53;
    if ((scaledC * factor) != (t << 53)) t += 1; // ceiling
    if (t < 1) t = 1;
    SparseConstruction s;
    s.q = q;
    s.copies = t;
    s.logCopies = detail::bigLog(t);
    return s;
}

/// t_G(lambda) = rho / ln rho; requires rho > 1.
inline double generalThreshold(double rho) {
    if (!(rho > 1.0)) throw UsageError("generalThreshold: rho must exceed 1");
    return rho / std::log(rho);
}

/// Sharp threshold n/(2 ln n) for the complete-graph sequence.
inline double completeThreshold(int n) {
    if (n < 3) throw UsageError("completeThreshold: n must be >= 3");
    return n / (2.0 * std::log(static_cast<double>(n)));
}

/// Sharp threshold (m-1)n/(2 ln n) for complete m-partite sequences.
inline double multipartiteThreshold(int m, int n) {
    if (m < 2) throw UsageError("multipartiteThreshold: m must be >= 2");
    if (n < 3) throw UsageError("multipartiteThreshold: n must be >= 3");
    return (m - 1) * n / (2.0 * std::log(static_cast<double>(n)));
}

} // namespace dpcover

#endif // DPCOVER_ANALYSIS_HPP
