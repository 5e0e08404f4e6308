#include "cfon/verify.hpp"
#include "cfon/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cfon {

bool Coloring::total() const {
    return std::all_of(color.begin(), color.end(), [](int c) { return c > 0; });
}

int Coloring::colors_used() const {
    std::set<int> s;
    for (int c : color)
        if (c > 0) s.insert(c);
    return (int)s.size();
}

int Coloring::max_color() const {
    int m = 0;
    for (int c : color) m = std::max(m, c);
    return m;
}

std::string serialize_coloring(const Coloring& c) {
    std::ostringstream out;
    for (int v = 0; v < (int)c.color.size(); ++v) {
        out << v + 1 << ' ';
        if (c.color[v] > 0)
            out << c.color[v];
        else
            out << '-';
        out << '\n';
    }
    return out.str();
}

Coloring parse_coloring(const std::string& text, int n) {
    Coloring c(n);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<char> seen(n, 0);
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string vt, ct;
        if (!(ls >> vt)) continue;
        if (vt == "c") continue;
        auto bad = [&](const std::string& why) {
            throw ParseError("line " + std::to_string(lineno) + ": " + why);
        };
        if (!(ls >> ct)) bad("expected 'vertex color'");
        long v;
        try {
            v = std::stol(vt);
        } catch (...) {
            v = -1;
        }
        if (v < 1 || v > n) bad("vertex label out of range");
        if (seen[v - 1]) bad("duplicate assignment for vertex " + vt);
        seen[v - 1] = 1;
        if (ct == "-") {
            c.color[v - 1] = 0;
        } else {
            long col;
            try {
                col = std::stol(ct);
            } catch (...) {
                col = -1;
            }
            if (col < 1) bad("colors are positive integers");
            c.color[v - 1] = (int)col;
        }
    }
    return c;
}

std::string serialize_witness(const Coloring& c) {
    std::ostringstream out;
    for (int v = 0; v < (int)c.witness.size(); ++v)
        if (c.witness[v] > 0) out << v + 1 << ' ' << c.witness[v] << '\n';
    return out.str();
}

namespace {

void require_sized(const Graph& g, const Coloring& c) {
    if ((int)c.color.size() != g.n)
        throw PreconditionError("coloring covers " + std::to_string(c.color.size()) +
                                " vertices, graph has " + std::to_string(g.n));
}

// colors in the list that occur exactly once; 0 entries ignored
int unique_color_in(const std::vector<int>& colors) {
    std::map<int, int> cnt;
    for (int c : colors)
        if (c > 0) ++cnt[c];
    for (auto [c, k] : cnt)
        if (k == 1) return c; // map iterates ascending: smallest qualifying
    return 0;
}

Verdict verify_core(const Graph& g, const Coloring& c, bool closed, bool partial) {
    require_sized(g, c);
    if (!partial && !c.total())
        throw PreconditionError("coloring is partial; use the partial verifier");
    Verdict out;
    out.colors_used = c.colors_used();
    out.witness.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> seen;
        for (int w : g.adj[v]) seen.push_back(c.color[w]);
        if (closed) seen.push_back(c.color[v]);
        int u = unique_color_in(seen);
        if (u == 0) {
            std::string nbhd = closed ? "N[v]" : "N(v)";
            out.violations.emplace_back(v, "no color occurs exactly once in " + nbhd +
                                               " of vertex " + std::to_string(v + 1));
        } else {
            out.witness[v] = u;
        }
    }
    out.valid = out.violations.empty();
    if (!out.valid) out.witness.clear();
    return out;
}

} // namespace

Verdict verify_cfon(const Graph& g, const Coloring& c) { return verify_core(g, c, false, false); }
Verdict verify_cfcn(const Graph& g, const Coloring& c) { return verify_core(g, c, true, false); }
Verdict verify_partial_cfon(const Graph& g, const Coloring& c) {
    return verify_core(g, c, false, true);
}

Verdict verify_witness(const Graph& g, const Coloring& c, const std::vector<int>& u) {
    require_sized(g, c);
    if ((int)u.size() != g.n) throw PreconditionError("witness map size mismatch");
    Verdict out;
    out.colors_used = c.colors_used();
    for (int v = 0; v < g.n; ++v) {
        if (u[v] == 0) continue;
        int cnt = 0;
        for (int w : g.adj[v])
            if (c.color[w] == u[v]) ++cnt;
        if (cnt != 1)
            out.violations.emplace_back(v, "claimed witness color " + std::to_string(u[v]) +
                                               " occurs " + std::to_string(cnt) +
                                               " times in N(v) of vertex " +
                                               std::to_string(v + 1));
    }
    out.valid = out.violations.empty();
    out.witness = u;
    return out;
}

} // namespace cfon
