#ifndef DPCOVER_EXPERIMENT_HPP
#define DPCOVER_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dpcover/analysis.hpp"
#include "dpcover/cover.hpp"
#include "dpcover/errors.hpp"
#include "dpcover/estimate.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/greedy.hpp"
#include "dpcover/io.hpp"
#include "dpcover/transversal.hpp"

namespace dpcover {

inline constexpr const char* kVersion = "1.0.0";

/// Monte Carlo estimate of P(G is (a,b)-DP-colorable) with the exact
/// solver deciding each sampled cover. Trial i draws its cover from
/// substream (seed, i); the result is a pure function of the arguments,
/// independent of thread count.
inline Estimate estimateProbability(const Graph& g, int a, int b,
                                    std::uint64_t trials, Seed seed,
                                    double level = kDefaultLevel,
                                    unsigned threads = 0,
                                    const ProgressFn& progress = nullptr) {
    if (b < 1 || b > a) throw UsageError("estimateProbability: need 1 <= b <= a");
    const std::uint64_t successes = countSuccesses(
        trials, threads,
        [&](std::uint64_t i) {
            const Cover c = sampleCover(g, a, substream(seed, i));
            return findBFoldTransversal(c, b).has_value();
        },
        progress);
    return makeEstimate(successes, trials, level, seed, "exact-solver");
}

/// One row of a k-sweep: the exact-solver estimate, the greedy-procedure
/// estimate on the same covers, and the analysis-module bounds.
struct SweepRow {
    int k = 0;
    bool certified = false; // k > 2 rho: colorable with probability 1, no sampling
    Estimate estimate;      // exact solver
    Estimate gtEstimate;    // greedy procedure, same cover substreams
    Rational eX;
    std::optional<double> markov;
    std::optional<double> chebyshev;
    std::optional<double> gtBound;
    Rational rho;
    int d = 0;
};

/// Sweep k over [kMin, kMax]. For each k both methods run on literally the
/// same sampled covers, and greedy success implies exact-solver success on
/// every single trial (checked, not just observed). Rows with k > 2 rho
/// are certified colorable and skip sampling.
inline std::vector<SweepRow> sweepK(const Graph& g, int kMin, int kMax, int b,
                                    std::uint64_t trials, Seed seed,
                                    double level = kDefaultLevel,
                                    unsigned threads = 0,
                                    const ProgressFn& progress = nullptr) {
    if (kMin < 1 || kMin > kMax) throw UsageError("sweepK: bad k range");
    if (b < 1) throw UsageError("sweepK: b must be >= 1");
    const DensityReport density = maxDensityExact(g);
    const DegeneracyOrdering ordering = degeneracyOrdering(g);

    std::vector<SweepRow> rows;
    for (int k = kMin; k <= kMax; ++k) {
        if (b > k) continue;
        SweepRow row;
        row.k = k;
        row.rho = density.maxDensity;
        row.d = ordering.d;

        MomentParams p;
        p.n = g.n();
        p.m = g.m();
        p.k = k;
        p.b = b;
        p.rho = density.maxDensity;
        p.d = ordering.d;
        row.eX = expectedBFoldTransversals(p);
        row.markov = markovColorBound(p).value;
        if (k >= 2 && g.m() >= 1 && b == 1 && expectedTransversals(p) != 0)
            row.chebyshev = chebyshevNonColorBound(p).value;
        if (k >= 2) row.gtBound = gtFailureBound(p).value;

        if (b == 1 && Rational(k) > 2 * density.maxDensity) {
            // k exceeds the degeneracy, so every cover is colorable
            row.certified = true;
            row.estimate = makeEstimate(trials, trials, level, seed, "certified");
            row.estimate.ciLow = row.estimate.ciHigh = 1.0;
            row.gtEstimate = row.estimate;
            rows.push_back(std::move(row));
            continue;
        }

        if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
        const unsigned useThreads =
            static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
        std::vector<std::uint64_t> exactPart(useThreads, 0), gtPart(useThreads, 0);
        std::atomic<bool> sandwichViolated{false};
        auto worker = [&](unsigned tid) {
            for (std::uint64_t i = tid; i < trials; i += useThreads) {
                const Cover c = sampleCover(g, k, substream(seed, i));
                const bool gtOk = gtRun(c, b, ordering).success;
                const bool exactOk = findBFoldTransversal(c, b).has_value();
                if (gtOk && !exactOk) sandwichViolated = true;
                if (exactOk) ++exactPart[tid];
                if (gtOk) ++gtPart[tid];
            }
        };
        if (useThreads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < useThreads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        if (sandwichViolated)
            throw std::logic_error(
                "sweepK: greedy succeeded on a cover the exact solver rejects");
        std::uint64_t exactTotal = 0, gtTotal = 0;
        for (unsigned t = 0; t < useThreads; ++t) {
            exactTotal += exactPart[t];
            gtTotal += gtPart[t];
        }
        row.estimate = makeEstimate(exactTotal, trials, level, seed, "exact-solver");
        row.gtEstimate = makeEstimate(gtTotal, trials, level, seed, "gt-procedure");
        rows.push_back(std::move(row));
        if (progress) progress(100 * (k - kMin + 1) / (kMax - kMin + 1));
    }
    return rows;
}

/// Empirical crossing window of a sweep: [largest k with estimate < 0.5,
/// smallest k with estimate >= 0.5]. Descriptive only.
struct CrossingWindow {
    std::optional<int> lastBelow;
    std::optional<int> firstAtOrAbove;
};

inline CrossingWindow crossingWindow(const std::vector<SweepRow>& rows) {
    CrossingWindow w;
    for (const auto& r : rows) {
        if (r.estimate.pointEstimate < 0.5) w.lastBelow = r.k;
        if (r.estimate.pointEstimate >= 0.5 && !w.firstAtOrAbove) w.firstAtOrAbove = r.k;
    }
    return w;
}

// ---- CSV emission -------------------------------------------------------

namespace detail {

inline std::string optToCsv(const std::optional<double>& v) {
    return v ? formatReal(*v) : "na";
}

inline std::optional<double> csvToOpt(const std::string& s) {
    if (s == "na") return std::nullopt;
    return std::stod(s);
}

} // namespace detail

inline const char* kSweepCsvHeader =
    "k,certified,trials,successes,estimate,ci_low,ci_high,"
    "gt_successes,gt_estimate,gt_ci_low,gt_ci_high,"
    "e_x,markov,chebyshev,gt_bound,rho,d";

inline std::string sweepProvenanceLine(const std::string& graphLabel, int b,
                                       std::uint64_t trials, Seed seed,
                                       double level) {
    std::ostringstream out;
    out << "# dpcover " << kVersion << " mode=sweep graph=" << graphLabel
        << " b=" << b << " trials=" << trials << " seed=" << seed.value
        << " level=" << formatReal(level);
    return out.str();
}

inline std::string writeSweepCsv(const std::vector<SweepRow>& rows,
                                 const std::string& provenance) {
    std::ostringstream out;
    out << provenance << "\n" << kSweepCsvHeader << "\n";
    for (const auto& r : rows) {
        out << r.k << "," << (r.certified ? 1 : 0) << "," << r.estimate.trials << ","
            << r.estimate.successes << "," << formatReal(r.estimate.pointEstimate)
            << "," << formatReal(r.estimate.ciLow) << ","
            << formatReal(r.estimate.ciHigh) << "," << r.gtEstimate.successes << ","
            << formatReal(r.gtEstimate.pointEstimate) << ","
            << formatReal(r.gtEstimate.ciLow) << "," << formatReal(r.gtEstimate.ciHigh)
            << "," << ratToString(r.eX) << "," << detail::optToCsv(r.markov) << ","
            << detail::optToCsv(r.chebyshev) << "," << detail::optToCsv(r.gtBound)
            << "," << ratToString(r.rho) << "," << r.d << "\n";
    }
    return out.str();
}

/// Parsed sweep CSV: provenance comment plus typed rows. Re-serializing
/// the result reproduces the input byte-identically.
struct SweepCsv {
    std::string provenance;
    std::vector<SweepRow> rows;
};

inline Rational parseRational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline SweepCsv parseSweepCsv(const std::string& text, double level = kDefaultLevel) {
    std::istringstream in(text);
    SweepCsv out;
    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != '#')
        throw UsageError("sweep csv: missing provenance comment line");
    out.provenance = line;
    if (!std::getline(in, line) || line != kSweepCsvHeader)
        throw UsageError("sweep csv: bad header line");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 17) throw UsageError("sweep csv: bad row: " + line);
        SweepRow r;
        r.k = std::stoi(f[0]);
        r.certified = f[1] == "1";
        const std::uint64_t trials = std::stoull(f[2]);
        r.estimate = makeEstimate(std::stoull(f[3]), trials, level, Seed{},
                                  r.certified ? "certified" : "exact-solver");
        r.estimate.pointEstimate = std::stod(f[4]);
        r.estimate.ciLow = std::stod(f[5]);
        r.estimate.ciHigh = std::stod(f[6]);
        r.gtEstimate = makeEstimate(std::stoull(f[7]), trials, level, Seed{},
                                    r.certified ? "certified" : "gt-procedure");
        r.gtEstimate.pointEstimate = std::stod(f[8]);
        r.gtEstimate.ciLow = std::stod(f[9]);
        r.gtEstimate.ciHigh = std::stod(f[10]);
        r.eX = parseRational(f[11]);
        r.markov = detail::csvToOpt(f[12]);
        r.chebyshev = detail::csvToOpt(f[13]);
        r.gtBound = detail::csvToOpt(f[14]);
        r.rho = parseRational(f[15]);
        r.d = std::stoi(f[16]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

// ---- experiment config --------------------------------------------------

/// Parsed experiment description: "key = value" lines, '#' comments.
struct ExperimentConfig {
    std::string mode;  // estimate | sweep | gt | analyze
    std::string graphPath;
    int k = 0;     // fold count (a); for sweep the range below is used
    int kMin = 0;
    int kMax = 0;
    int b = 1;
    std::uint64_t trials = kDefaultTrials;
    Seed seed;
    double level = kDefaultLevel;
    std::string outPath;
};

inline ExperimentConfig parseExperimentConfig(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    std::map<std::string, bool> seen;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineNo) +
                             ": expected key = value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto z = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, z - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "mode") cfg.mode = value;
            else if (key == "graph") cfg.graphPath = value;
            else if (key == "k" || key == "a") cfg.k = std::stoi(value);
            else if (key == "kmin") cfg.kMin = std::stoi(value);
            else if (key == "kmax") cfg.kMax = std::stoi(value);
            else if (key == "b") cfg.b = std::stoi(value);
            else if (key == "trials") cfg.trials = std::stoull(value);
            else if (key == "seed") cfg.seed = Seed{std::stoull(value)};
            else if (key == "level") cfg.level = std::stod(value);
            else if (key == "out") cfg.outPath = value;
            else
                throw UsageError("config line " + std::to_string(lineNo) +
                                 ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw UsageError("config line " + std::to_string(lineNo) +
                             ": bad value for '" + key + "'");
        }
        seen[key] = true;
    }
    if (cfg.mode.empty()) throw UsageError("config: missing 'mode'");
    if (cfg.graphPath.empty()) throw UsageError("config: missing 'graph'");
    return cfg;
}

inline std::string estimateCsv(const Estimate& e, const std::string& graphLabel,
                               int a, int b) {
    std::ostringstream out;
    out << "# dpcover " << kVersion << " mode=estimate graph=" << graphLabel
        << " k=" << a << " b=" << b << " trials=" << e.trials
        << " seed=" << e.seed.value << " level=" << formatReal(e.level) << "\n";
    out << "successes,trials,estimate,ci_low,ci_high,method\n";
    out << e.successes << "," << e.trials << "," << formatReal(e.pointEstimate) << ","
        << formatReal(e.ciLow) << "," << formatReal(e.ciHigh) << "," << e.method
        << "\n";
    return out.str();
}

inline std::string gtCsv(const SurvivalStats& st, const Estimate& rate,
                         const std::string& graphLabel, Seed seed) {
    std::ostringstream out;
    out << "# dpcover " << kVersion << " mode=gt graph=" << graphLabel
        << " a=" << st.a << " b=" << st.b << " trials=" << st.trials
        << " seed=" << seed.value << "\n";
    out << "position,vertex,back_degree,mean_survival,bound,stderr\n";
    const int n = static_cast<int>(st.ordering.order.size());
    for (int pos = 0; pos < n; ++pos) {
        double mean = 0.0;
        for (int j = 0; j < st.a; ++j)
            mean += st.meanSurvival[static_cast<std::size_t>(pos) *
                                        static_cast<std::size_t>(st.a) +
                                    static_cast<std::size_t>(j)];
        mean /= st.a;
        const double bound = st.perPositionBound[static_cast<std::size_t>(pos)];
        const double se =
            std::sqrt(bound * (1.0 - bound) / static_cast<double>(st.trials));
        out << pos << "," << st.ordering.order[static_cast<std::size_t>(pos)] << ","
            << st.ordering.backDegrees[static_cast<std::size_t>(pos)] << ","
            << formatReal(mean) << "," << formatReal(bound) << "," << formatReal(se)
            << "\n";
    }
    out << "summary,success_rate," << formatReal(rate.pointEstimate) << ",ci,"
        << formatReal(rate.ciLow) << "," << formatReal(rate.ciHigh) << "\n";
    return out.str();
}

inline std::string analyzeCsv(const Graph& g, int k, int b,
                              const std::string& graphLabel) {
    const MomentParams p = MomentParams::fromGraph(g, k, b);
    std::ostringstream out;
    out << "# dpcover " << kVersion << " mode=analyze graph=" << graphLabel
        << " k=" << k << " b=" << b << "\n";
    out << "quantity,value\n";
    out << "n," << p.n << "\n";
    out << "m," << p.m << "\n";
    out << "rho," << ratToString(p.rho) << "\n";
    out << "degeneracy," << p.d << "\n";
    out << "e_x," << ratToString(expectedBFoldTransversals(p)) << "\n";
    out << "markov," << formatReal(markovColorBound(p).value) << "\n";
    if (k >= 2 && p.m >= 1) {
        out << "variance_ratio," << formatReal(varianceRatioBound(p).value) << "\n";
        if (b == 1 && expectedTransversals(p) != 0)
            out << "chebyshev," << formatReal(chebyshevNonColorBound(p).value) << "\n";
        else
            out << "chebyshev,na\n";
        out << "gt_bound," << formatReal(gtFailureBound(p).value) << "\n";
    } else {
        out << "variance_ratio,na\nchebyshev,na\ngt_bound,na\n";
    }
    if (p.rho > 1)
        out << "threshold_general," << formatReal(generalThreshold(ratToDouble(p.rho)))
            << "\n";
    else
        out << "threshold_general,na\n";
    return out.str();
}

/// Execute a parsed experiment and write its CSV artifact atomically.
/// Returns the CSV text. Byte-identical for identical configs.
inline std::string runExperimentScript(const ExperimentConfig& cfg,
                                       unsigned threads = 0,
                                       const ProgressFn& progress = nullptr) {
    const Graph g = loadGraph(cfg.graphPath);
    const std::string label =
        g.name().empty() ? cfg.graphPath : g.name();
    std::string csv;
    if (cfg.mode == "estimate") {
        if (cfg.k < 1) throw UsageError("config: estimate mode needs k >= 1");
        const Estimate e = estimateProbability(g, cfg.k, cfg.b, cfg.trials, cfg.seed,
                                               cfg.level, threads, progress);
        csv = estimateCsv(e, label, cfg.k, cfg.b);
    } else if (cfg.mode == "sweep") {
        if (cfg.kMin < 1 || cfg.kMax < cfg.kMin)
            throw UsageError("config: sweep mode needs 1 <= kmin <= kmax");
        const auto rows = sweepK(g, cfg.kMin, cfg.kMax, cfg.b, cfg.trials, cfg.seed,
                                 cfg.level, threads, progress);
        csv = writeSweepCsv(rows, sweepProvenanceLine(label, cfg.b, cfg.trials,
                                                      cfg.seed, cfg.level));
    } else if (cfg.mode == "gt") {
        if (cfg.k < 1) throw UsageError("config: gt mode needs k >= 1");
        const SurvivalStats st =
            survivalStats(g, cfg.k, cfg.b, cfg.trials, cfg.seed, threads);
        const Estimate rate = gtSuccessRate(g, cfg.k, cfg.b, cfg.trials, cfg.seed,
                                            cfg.level, threads);
        csv = gtCsv(st, rate, label, cfg.seed);
    } else if (cfg.mode == "analyze") {
        if (cfg.k < 1) throw UsageError("config: analyze mode needs k >= 1");
        csv = analyzeCsv(g, cfg.k, cfg.b, label);
    } else {
        throw UsageError("config: unknown mode '" + cfg.mode + "'");
    }
    if (!cfg.outPath.empty()) writeFileAtomic(cfg.outPath, csv);
    return csv;
}

} // namespace dpcover

#endif // DPCOVER_EXPERIMENT_HPP
