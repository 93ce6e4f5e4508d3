#ifndef DPCOVER_IO_HPP
#define DPCOVER_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpcover/cover.hpp"
#include "dpcover/errors.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/rational.hpp"

namespace dpcover {

/// Reals are printed with 12 significant digits everywhere, so identical
/// runs produce byte-identical files.
inline std::string formatReal(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// ---- graph text format ----------------------------------------------
// First non-comment line "n m", then m lines "u v" (0-based, u < v),
// order-significant. Comment lines start with '#'.

inline std::string writeGraphText(const Graph& g) {
    std::ostringstream out;
    if (!g.name().empty()) out << "# " << g.name() << "\n";
    out << g.n() << " " << g.m() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

inline Graph parseGraphText(std::istream& in, const std::string& name = "") {
    std::string line;
    int lineNo = 0;
    auto nextLine = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineNo;
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#') continue;
            return true;
        }
        return false;
    };
    if (!nextLine()) throw UsageError("graph parse: missing header line");
    std::istringstream hdr(line);
    int n = -1, m = -1;
    if (!(hdr >> n >> m) || n < 0 || m < 0)
        throw UsageError("graph parse: bad header at line " + std::to_string(lineNo));
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        if (!nextLine())
            throw UsageError("graph parse: expected " + std::to_string(m) +
                             " edges, got " + std::to_string(j));
        std::istringstream es(line);
        int u, v;
        if (!(es >> u >> v))
            throw UsageError("graph parse: bad edge at line " + std::to_string(lineNo));
        edges.emplace_back(u, v);
    }
    return Graph(n, std::move(edges), name);
}

// ---- cover text format ----------------------------------------------
// Line 1 "k", then one line per edge in edge order:
// "u v : p0 p1 ... p(k-1)". Round-trips bit-exactly.

inline std::string writeCoverText(const Cover& c) {
    std::ostringstream out;
    out << c.k << "\n";
    for (std::size_t j = 0; j < c.perms.size(); ++j) {
        const auto& [u, v] = c.graph.edges()[j];
        out << u << " " << v << " :";
        for (int image : c.perms[j]) out << " " << image;
        out << "\n";
    }
    return out.str();
}

inline Cover parseCoverText(std::istream& in, const Graph& g) {
    std::string line;
    if (!std::getline(in, line)) throw UsageError("cover parse: missing k line");
    int k = 0;
    {
        std::istringstream ks(line);
        if (!(ks >> k) || k < 1) throw UsageError("cover parse: bad fold count");
    }
    Cover c{g, k, {}};
    c.perms.reserve(static_cast<std::size_t>(g.m()));
    for (int j = 0; j < g.m(); ++j) {
        if (!std::getline(in, line))
            throw UsageError("cover parse: expected " + std::to_string(g.m()) +
                             " edge lines, got " + std::to_string(j));
        std::istringstream es(line);
        int u, v;
        std::string colon;
        if (!(es >> u >> v >> colon) || colon != ":")
            throw UsageError("cover parse: bad edge line " + std::to_string(j + 2));
        if (std::make_pair(u, v) != g.edges()[static_cast<std::size_t>(j)])
            throw UsageError("cover parse: edge " + std::to_string(j) +
                             " does not match the graph's edge order");
        std::vector<int> p;
        p.reserve(static_cast<std::size_t>(k));
        int image;
        while (es >> image) p.push_back(image);
        c.perms.push_back(std::move(p));
    }
    if (auto vr = validateCover(c); !vr)
        throw UsageError("cover parse: " + vr.reason);
    return c;
}

// ---- files ------------------------------------------------------------

inline std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Write via a temp file and rename, so a partial artifact never appears
/// under the target path.
inline void writeFileAtomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

inline Graph loadGraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path + " for reading");
    return parseGraphText(in, std::filesystem::path(path).stem().string());
}

inline Cover loadCover(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path + " for reading");
    return parseCoverText(in, g);
}

} // namespace dpcover

#endif // DPCOVER_IO_HPP
