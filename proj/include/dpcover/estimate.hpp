#ifndef DPCOVER_ESTIMATE_HPP
#define DPCOVER_ESTIMATE_HPP

#include <boost/math/distributions/normal.hpp>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "dpcover/errors.hpp"
#include "dpcover/rng.hpp"

namespace dpcover {

constexpr std::uint64_t kMaxTrials = 100'000'000;
constexpr std::uint64_t kDefaultTrials = 10'000;
constexpr double kDefaultLevel = 0.95;

/// Monte Carlo probability estimate with a Wilson score interval.
struct Estimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double pointEstimate = 0.0;
    double ciLow = 0.0;
    double ciHigh = 0.0;
    double level = kDefaultLevel;
    Seed seed;
    std::string method; // "exact-solver", "gt-procedure", or "certified"
};

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

/// Wilson score interval; well-behaved near 0 and 1.
inline WilsonInterval wilsonInterval(std::uint64_t successes, std::uint64_t trials,
                                     double level) {
    if (trials == 0) throw UsageError("wilsonInterval: trials must be >= 1");
    if (!(level > 0.0 && level < 1.0))
        throw UsageError("wilsonInterval: level must lie in (0,1)");
    const double z = boost::math::quantile(boost::math::normal_distribution<double>(),
                                           (1.0 + level) / 2.0);
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

inline Estimate makeEstimate(std::uint64_t successes, std::uint64_t trials,
                             double level, Seed seed, std::string method) {
    Estimate e;
    e.successes = successes;
    e.trials = trials;
    e.pointEstimate = static_cast<double>(successes) / static_cast<double>(trials);
    const WilsonInterval ci = wilsonInterval(successes, trials, level);
    e.ciLow = ci.low;
    e.ciHigh = ci.high;
    e.level = level;
    e.seed = seed;
    e.method = std::move(method);
    return e;
}

using ProgressFn = std::function<void(int /*percent*/)>;

/// Run `trials` independent boolean trials across `threads` workers and
/// count successes. Each trial sees only its own index, so the total is
/// independent of the thread count and the scheduling order.
template <typename TrialFn>
std::uint64_t countSuccesses(std::uint64_t trials, unsigned threads, TrialFn&& trial,
                             const ProgressFn& progress = nullptr) {
    if (trials == 0) throw UsageError("countSuccesses: trials must be >= 1");
    if (trials > kMaxTrials)
        throw GuardExceeded("countSuccesses: trials exceed hard cap " +
                            std::to_string(kMaxTrials));
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, trials));

    std::atomic<std::uint64_t> done{0};
    std::atomic<int> lastPercent{-1};
    std::vector<std::uint64_t> partial(threads, 0);
    auto worker = [&](unsigned tid) {
        std::uint64_t local = 0;
        for (std::uint64_t i = tid; i < trials; i += threads) {
            if (trial(i)) ++local;
            if (progress) {
                const std::uint64_t d = done.fetch_add(1) + 1;
                const int pct = static_cast<int>(100 * d / trials);
                int prev = lastPercent.load();
                while (pct > prev && !lastPercent.compare_exchange_weak(prev, pct)) {
                }
                if (pct > prev) progress(pct);
            }
        }
        partial[tid] = local;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    std::uint64_t total = 0;
    for (std::uint64_t s : partial) total += s;
    return total;
}

} // namespace dpcover

#endif // DPCOVER_ESTIMATE_HPP
