#include "cfon/exact.hpp"
#include "cfon/errors.hpp"
#include "cfon/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace cfon {

int effective_oracle_cap(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CFON_ORACLE_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return (int)v;
    }
    return 12;
}

namespace {

struct Search {
    const Graph& g;
    bool closed;
    bool partial;
    int k = 0;
    std::vector<int> order;
    std::vector<int> color;     // -1 undecided, 0 decided-unassigned, >0 assigned
    std::vector<int> remaining; // undecided vertices in N(v) (or N[v] if closed)

    Search(const Graph& g_, bool closed_, bool partial_) : g(g_), closed(closed_), partial(partial_) {
        order.resize(g.n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
            return a < b;
        });
    }

    bool constraint_holds(int v) const {
        std::map<int, int> cnt;
        for (int w : g.adj[v])
            if (color[w] > 0) ++cnt[color[w]];
        if (closed && color[v] > 0) ++cnt[color[v]];
        for (auto [c, m] : cnt)
            if (m == 1) return true;
        return false;
    }

    bool place(int x, int c) {
        color[x] = c;
        for (int w : g.adj[x]) --remaining[w];
        if (closed) --remaining[x];
        for (int w : g.adj[x])
            if (remaining[w] == 0 && !constraint_holds(w)) return false;
        if (closed && remaining[x] == 0 && !constraint_holds(x)) return false;
        return true;
    }

    void unplace(int x) {
        for (int w : g.adj[x]) ++remaining[w];
        if (closed) ++remaining[x];
        color[x] = -1;
    }

    bool dfs(int i, int max_used) {
        if (i == g.n) return true;
        int x = order[i];
        int top = std::min(k, max_used + 1);
        for (int c = 1; c <= top; ++c) {
            if (place(x, c) && dfs(i + 1, std::max(max_used, c))) return true;
            unplace(x);
        }
        if (partial) {
            if (place(x, 0) && dfs(i + 1, max_used)) return true;
            unplace(x);
        }
        return false;
    }

    bool run(int k_) {
        k = k_;
        color.assign(g.n, -1);
        remaining.resize(g.n);
        for (int v = 0; v < g.n; ++v) remaining[v] = g.degree(v) + (closed ? 1 : 0);
        return dfs(0, 0);
    }
};

ExactResult solve(const Graph& g, int cap, bool closed, bool partial) {
    cap = effective_oracle_cap(cap);
    if (g.n == 0) throw PreconditionError("empty graph");
    if (g.n > cap)
        throw CapError("exact search capped at " + std::to_string(cap) + " vertices (graph has " +
                       std::to_string(g.n) + "); raise CFON_ORACLE_CAP to override");
    if (!closed) {
        auto iso = isolated_vertices(g);
        if (!iso.empty())
            throw PreconditionError("isolated vertex " + std::to_string(iso[0] + 1) +
                                    " admits no open-neighborhood coloring");
    }
    Search s(g, closed, partial);
    for (int k = 1; k <= g.n; ++k) {
        if (!s.run(k)) continue;
        ExactResult res;
        res.k = k;
        res.coloring.color = s.color;
        Verdict v = partial ? verify_partial_cfon(g, res.coloring)
                            : (closed ? verify_cfcn(g, res.coloring) : verify_cfon(g, res.coloring));
        check_internal(v.valid, "exact search produced an invalid coloring");
        check_internal(res.coloring.colors_used() <= k, "exact search exceeded its color budget");
        res.coloring.witness = v.witness;
        return res;
    }
    throw InternalError("exact search found no coloring with n colors");
}

} // namespace

ExactResult exact_chi_on(const Graph& g, int cap) { return solve(g, cap, false, false); }
ExactResult exact_chi_cn(const Graph& g, int cap) { return solve(g, cap, true, false); }
ExactResult exact_chi_on_partial(const Graph& g, int cap) { return solve(g, cap, false, true); }

} // namespace cfon
