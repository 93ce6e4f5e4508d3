// Command-line surface for the dpcover library: graph generation, exact
// invariants, cover sampling and checking, Monte Carlo estimation, k-sweeps,
// greedy-procedure statistics, and closed-form bound tables.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "dpcover/dpcover.hpp"

namespace {

using namespace dpcover;

void emit(const std::string& content, const std::string& outPath) {
    if (outPath.empty())
        std::cout << content;
    else
        writeFileAtomic(outPath, content);
}

ProgressFn stderrProgress(std::uint64_t trials) {
    if (trials < 100'000) return nullptr;
    return [](int pct) { std::fprintf(stderr, "\r%3d%%", pct); };
}

int runCli(int argc, char** argv) {
    CLI::App app{"random DP-covers: sampling, exact solving, and bounds"};
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware)");

    // gen
    auto* gen = app.add_subcommand("gen", "emit a graph file");
    std::string family = "complete";
    int q = 3, parts = 2, partSize = 2, copies = 2, gn = 10, gm = 15;
    std::uint64_t genSeed = 0;
    std::string basePath, outPath;
    gen->add_option("--family", family,
                    "complete | multipartite | disjoint-copies | random")
        ->check(CLI::IsMember({"complete", "multipartite", "disjoint-copies", "random"}));
    gen->add_option("--q", q, "clique size (complete)");
    gen->add_option("--parts", parts, "part count (multipartite)");
    gen->add_option("--part-size", partSize, "part size (multipartite)");
    gen->add_option("--copies", copies, "copy count (disjoint-copies)");
    gen->add_option("--base", basePath, "base graph file (disjoint-copies)");
    gen->add_option("--n", gn, "vertex count (random)");
    gen->add_option("--m", gm, "edge count (random)");
    gen->add_option("--seed", genSeed, "seed (random)");
    gen->add_option("--out", outPath, "output path (default stdout)");

    // density / degeneracy
    auto* density = app.add_subcommand("density", "exact density and maximum density");
    auto* degeneracy = app.add_subcommand("degeneracy", "smallest-last ordering and degeneracy");
    std::string graphPath;
    for (auto* cmd : {density, degeneracy})
        cmd->add_option("--graph", graphPath, "graph file")->required();

    // sample
    auto* sample = app.add_subcommand("sample", "emit a random cover file");
    int k = 2, b = 1;
    std::uint64_t seedValue = 0;
    sample->add_option("--graph", graphPath, "graph file")->required();
    sample->add_option("--k", k, "fold count")->required();
    sample->add_option("--seed", seedValue, "seed");
    sample->add_option("--out", outPath, "output path (default stdout)");

    // check
    auto* check = app.add_subcommand("check", "decide colorability of a cover");
    std::string coverPath;
    check->add_option("--graph", graphPath, "graph file")->required();
    check->add_option("--cover", coverPath, "cover file")->required();
    check->add_option("--b", b, "selection size (default 1)");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo colorability probability");
    std::uint64_t trials = kDefaultTrials;
    double level = kDefaultLevel;
    estimate->add_option("--graph", graphPath, "graph file")->required();
    estimate->add_option("--k,--a", k, "fold count")->required();
    estimate->add_option("--b", b, "selection size (default 1)");
    estimate->add_option("--trials", trials, "trial count");
    estimate->add_option("--seed", seedValue, "seed");
    estimate->add_option("--level", level, "confidence level");
    estimate->add_option("--out", outPath, "output path (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "k-sweep with estimates and bounds");
    int kMin = 1, kMax = 4;
    sweep->add_option("--graph", graphPath, "graph file")->required();
    sweep->add_option("--kmin", kMin, "smallest k")->required();
    sweep->add_option("--kmax", kMax, "largest k")->required();
    sweep->add_option("--b", b, "selection size (default 1)");
    sweep->add_option("--trials", trials, "trials per k");
    sweep->add_option("--seed", seedValue, "seed");
    sweep->add_option("--level", level, "confidence level");
    sweep->add_option("--out", outPath, "output path (default stdout)");

    // gt
    auto* gt = app.add_subcommand("gt", "greedy-procedure survival statistics");
    gt->add_option("--graph", graphPath, "graph file")->required();
    gt->add_option("--k,--a", k, "fold count")->required();
    gt->add_option("--b", b, "selection size (default 1)");
    gt->add_option("--trials", trials, "trial count");
    gt->add_option("--seed", seedValue, "seed");
    gt->add_option("--level", level, "confidence level");
    gt->add_option("--out", outPath, "output path (default stdout)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "closed-form quantities and bounds");
    std::string format = "csv";
    analyze->add_option("--graph", graphPath, "graph file")->required();
    analyze->add_option("--k,--a", k, "fold count")->required();
    analyze->add_option("--b", b, "selection size (default 1)");
    analyze->add_option("--format", format, "csv | text")
        ->check(CLI::IsMember({"csv", "text"}));
    analyze->add_option("--out", outPath, "output path (default stdout)");

    // run
    auto* run = app.add_subcommand("run", "execute an experiment config file");
    std::string configPath;
    run->add_option("--config", configPath, "config file (key = value lines)")->required();

    CLI11_PARSE(app, argc, argv);
    const Seed seed{seedValue};

    if (gen->parsed()) {
        Graph g;
        if (family == "complete") g = complete(q);
        else if (family == "multipartite") g = completeMultipartite(parts, partSize);
        else if (family == "disjoint-copies") {
            if (basePath.empty()) throw UsageError("gen: disjoint-copies needs --base");
            g = disjointCopies(copies, loadGraph(basePath));
        } else {
            g = randomGraph(gn, gm, Seed{genSeed});
        }
        emit(writeGraphText(g), outPath);
    } else if (density->parsed()) {
        const Graph g = loadGraph(graphPath);
        const DensityReport rep = maxDensityExact(g);
        std::cout << "density " << ratToString(rep.density) << "\n";
        std::cout << "max-density " << ratToString(rep.maxDensity) << "\n";
        std::cout << "witness";
        for (int v : rep.witness) std::cout << " " << v;
        std::cout << "\n";
    } else if (degeneracy->parsed()) {
        const Graph g = loadGraph(graphPath);
        const DegeneracyOrdering ord = degeneracyOrdering(g);
        std::cout << "degeneracy " << ord.d << "\n";
        std::cout << "order";
        for (int v : ord.order) std::cout << " " << v;
        std::cout << "\nback-degrees";
        for (int d : ord.backDegrees) std::cout << " " << d;
        std::cout << "\n";
    } else if (sample->parsed()) {
        const Graph g = loadGraph(graphPath);
        emit(writeCoverText(sampleCover(g, k, seed)), outPath);
    } else if (check->parsed()) {
        const Graph g = loadGraph(graphPath);
        const Cover c = loadCover(coverPath, g);
        const auto t = findBFoldTransversal(c, b);
        if (t) {
            std::cout << "COLORABLE\n";
            for (int v = 0; v < g.n(); ++v) {
                std::cout << v << ":";
                bool first = true;
                for (int i : t->choice[static_cast<std::size_t>(v)]) {
                    std::cout << (first ? "" : ",") << i;
                    first = false;
                }
                std::cout << "\n";
            }
        } else {
            std::cout << "NOT-COLORABLE\n";
        }
    } else if (estimate->parsed()) {
        const Graph g = loadGraph(graphPath);
        const Estimate e = estimateProbability(g, k, b, trials, seed, level, threads,
                                               stderrProgress(trials));
        emit(estimateCsv(e, g.name(), k, b), outPath);
    } else if (sweep->parsed()) {
        const Graph g = loadGraph(graphPath);
        const auto rows = sweepK(g, kMin, kMax, b, trials, seed, level, threads);
        emit(writeSweepCsv(rows, sweepProvenanceLine(g.name(), b, trials, seed, level)),
             outPath);
    } else if (gt->parsed()) {
        const Graph g = loadGraph(graphPath);
        const SurvivalStats st = survivalStats(g, k, b, trials, seed, threads);
        const Estimate rate = gtSuccessRate(g, k, b, trials, seed, level, threads);
        emit(gtCsv(st, rate, g.name(), seed), outPath);
    } else if (analyze->parsed()) {
        const Graph g = loadGraph(graphPath);
        std::string csv = analyzeCsv(g, k, b, g.name());
        if (format == "text") {
            // aligned two-column rendering of the same table
            std::string textOut;
            std::istringstream in(csv);
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty() && line[0] == '#') {
                    textOut += line + "\n";
                    continue;
                }
                const auto comma = line.find(',');
                if (comma == std::string::npos) continue;
                std::string key = line.substr(0, comma);
                key.resize(20, ' ');
                textOut += key + line.substr(comma + 1) + "\n";
            }
            csv = textOut;
        }
        emit(csv, outPath);
    } else if (run->parsed()) {
        const ExperimentConfig cfg = parseExperimentConfig(readFile(configPath));
        const std::string csv = runExperimentScript(cfg, threads);
        if (cfg.outPath.empty()) std::cout << csv;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return runCli(argc, argv);
    } catch (const dpcover::GuardExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dpcover::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dpcover::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
