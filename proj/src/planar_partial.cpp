#include "cfon/planar_partial.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <string>

#include "cfon/errors.hpp"
#include "cfon/verify.hpp"

namespace cfon {
namespace {

std::vector<int> multi_source_distances(const Graph& g, const std::vector<int>& sources) {
    std::vector<int> dist(g.n, -1);
    std::deque<int> q;
    for (int s : sources) {
        dist[s] = 0;
        q.push_back(s);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : g.adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

void require_sorted_unique(const std::vector<int>& xs, const std::string& what) {
    for (size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i] >= xs[i + 1])
            throw PreconditionError(what + " must be sorted without duplicates");
}

// colors v0 with 1 and v1 with base+1 (base is a 1-based proper coloring of the
// contracted graph, indexed like p.v1), leaves v2 uncolored, and attaches the
// witness map the construction guarantees
Coloring lift_partial(const Graph& g, const Distance3Partition& p,
                      const std::vector<int>& base, int bound) {
    Coloring c(g.n);
    c.witness.assign(g.n, 0);
    for (size_t i = 0; i < p.v1.size(); ++i)
        c.color[p.v1[i]] = base[i] + 1; // shift reserves color 1 for v0
    for (int v : p.v0)
        c.color[v] = 1;
    for (int v : p.v0)
        c.witness[v] = c.color[p.f.at(v)];
    for (int v : p.v2)
        c.witness[v] = c.color[p.f.at(v)];
    for (int v : p.v1)
        c.witness[v] = 1;
    check_internal(c.max_color() <= bound, "lifted coloring exceeds its color budget");
    check_internal(verify_partial_cfon(g, c).valid,
                   "lifted coloring is not a valid partial conflict-free coloring");
    check_internal(verify_witness(g, c, c.witness).valid, "lifted witness map is invalid");
    return c;
}

} // namespace

std::vector<int> maximal_distance3_set(const Graph& g, int start) {
    if (start < 0 || start >= g.n)
        throw PreconditionError("start vertex out of range");
    if (!is_connected(g))
        throw PreconditionError("graph must be connected");
    std::vector<int> s = {start};
    bool grew = true;
    while (grew) {
        grew = false;
        auto dist = multi_source_distances(g, s);
        for (int w = 0; w < g.n; ++w) {
            // addable exactly when the nearest member sits at distance 3:
            // no member is closer, and one realizes distance 3 precisely
            if (dist[w] == 3) {
                s.push_back(w);
                dist = multi_source_distances(g, s);
                grew = true;
            }
        }
    }
    std::sort(s.begin(), s.end());

    // audit the three defining clauses
    auto dist = multi_source_distances(g, s);
    std::set<int> members(s.begin(), s.end());
    for (int v = 0; v < g.n; ++v)
        check_internal(members.count(v) ? dist[v] == 0 : dist[v] >= 1 && dist[v] <= 2,
                       "distance-3 set is not maximal");
    for (size_t i = 0; i < s.size(); ++i) {
        bool has_exact = false;
        for (size_t j = 0; j < s.size(); ++j) {
            if (i == j)
                continue;
            int d = bfs_distance(g, s[i], s[j]);
            check_internal(d >= 3, "distance-3 set members are too close");
            if (d == 3)
                has_exact = true;
        }
        check_internal(s.size() == 1 || has_exact,
                       "distance-3 set member has no partner at distance exactly 3");
    }
    return s;
}

Distance3Partition make_distance3_partition(const Graph& g, int start) {
    if (g.n < 2)
        throw PreconditionError("graph must have at least two vertices");
    Distance3Partition p;
    p.v0 = maximal_distance3_set(g, start);
    std::set<int> in0(p.v0.begin(), p.v0.end());
    std::set<int> in1;
    for (int v : p.v0)
        for (int w : g.adj[v])
            in1.insert(w);
    p.v1.assign(in1.begin(), in1.end());
    for (int v = 0; v < g.n; ++v)
        if (!in0.count(v) && !in1.count(v))
            p.v2.push_back(v);
    auto pick = [&](int v) {
        for (int w : g.adj[v]) // adjacency sorted: lowest-id eligible neighbor
            if (in1.count(w))
                return w;
        throw PreconditionError("vertex " + std::to_string(v + 1) +
                                " has no neighbor adjacent to the distance-3 set");
    };
    for (int v : p.v0)
        p.f[v] = pick(v);
    for (int v : p.v2)
        p.f[v] = pick(v);
    validate_distance3_partition(g, p);
    return p;
}

void validate_distance3_partition(const Graph& g, const Distance3Partition& p) {
    require_sorted_unique(p.v0, "v0");
    require_sorted_unique(p.v1, "v1");
    require_sorted_unique(p.v2, "v2");
    std::vector<int> cls(g.n, -1);
    auto place = [&](const std::vector<int>& xs, int which) {
        for (int v : xs) {
            if (v < 0 || v >= g.n)
                throw PreconditionError("partition names a vertex out of range");
            if (cls[v] != -1)
                throw PreconditionError("vertex " + std::to_string(v + 1) +
                                        " appears in two classes");
            cls[v] = which;
        }
    };
    place(p.v0, 0);
    place(p.v1, 1);
    place(p.v2, 2);
    for (int v = 0; v < g.n; ++v)
        if (cls[v] == -1)
            throw PreconditionError("vertex " + std::to_string(v + 1) +
                                    " is missing from the partition");

    for (int v : p.v0) {
        bool has_v1 = false;
        for (int w : g.adj[v]) {
            if (cls[w] == 0)
                throw PreconditionError("v0 is not an independent set");
            if (cls[w] == 2)
                throw PreconditionError("edge runs between v0 and v2");
            if (cls[w] == 1)
                has_v1 = true;
        }
        if (!has_v1)
            throw PreconditionError("a v0 vertex has no neighbor in v1");
    }
    for (int w : p.v1) {
        int anchors = 0;
        for (int x : g.adj[w])
            if (cls[x] == 0)
                ++anchors;
        if (anchors != 1)
            throw PreconditionError("a v1 vertex must have exactly one v0 neighbor, found " +
                                    std::to_string(anchors));
    }
    for (int v : p.v2) {
        bool has_v1 = false;
        for (int w : g.adj[v])
            if (cls[w] == 1)
                has_v1 = true;
        if (!has_v1)
            throw PreconditionError("a v2 vertex has no neighbor in v1");
    }

    for (int v : p.v0)
        if (!p.f.count(v))
            throw PreconditionError("contraction map misses a v0 vertex");
    for (int v : p.v2)
        if (!p.f.count(v))
            throw PreconditionError("contraction map misses a v2 vertex");
    if (p.f.size() != p.v0.size() + p.v2.size())
        throw PreconditionError("contraction map covers a vertex outside v0 and v2");
    for (const auto& [v, t] : p.f) {
        if (cls[t] != 1)
            throw PreconditionError("contraction target is not in v1");
        if (!g.has_edge(v, t))
            throw PreconditionError("contraction target is not a neighbor");
    }
}

Graph build_contracted_graph(const Graph& g, const Distance3Partition& p) {
    validate_distance3_partition(g, p);
    std::map<int, int> idx;
    for (int i = 0; i < static_cast<int>(p.v1.size()); ++i)
        idx[p.v1[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) {
        bool um = idx.count(u) != 0, vm = idx.count(v) != 0;
        if (um && vm) {
            edges.emplace_back(idx[u], idx[v]);
        } else if (um || vm) {
            int w = um ? u : v;      // endpoint kept
            int a = um ? v : u;      // endpoint absorbed into f(a)
            int t = p.f.at(a);
            if (t != w)              // the contracted edge itself vanishes
                edges.emplace_back(idx[t], idx[w]);
        }
        // both endpoints outside v1: an edge inside v2, which is deleted
    }
    Graph out = Graph::from_edges(static_cast<int>(p.v1.size()), edges);
    check_internal(out.edge_count() <= g.edge_count(), "contraction increased the edge count");
    return out;
}

ProperColoring proper_coloring(const Graph& g, int k, long long node_budget) {
    if (k < 0)
        throw PreconditionError("color budget must be nonnegative");
    if (node_budget < 1)
        throw PreconditionError("node budget must be positive");
    ProperColoring out;
    out.color.assign(g.n, 0);
    int colored = 0;
    int max_used = 0;
    std::function<ProperStatus()> descend = [&]() -> ProperStatus {
        if (colored == g.n)
            return ProperStatus::Success;
        if (++out.nodes > node_budget)
            return ProperStatus::BudgetExhausted;
        // most saturated uncolored vertex next; ties to the lowest id
        int pick = -1, pick_sat = -1;
        for (int v = 0; v < g.n; ++v) {
            if (out.color[v] != 0)
                continue;
            std::set<int> seen;
            for (int w : g.adj[v])
                if (out.color[w] != 0)
                    seen.insert(out.color[w]);
            int sat = static_cast<int>(seen.size());
            if (sat > pick_sat) {
                pick_sat = sat;
                pick = v;
            }
        }
        int cap = std::min(k, max_used + 1); // a brand-new color needs only one representative
        for (int c = 1; c <= cap; ++c) {
            bool free = true;
            for (int w : g.adj[pick])
                if (out.color[w] == c) {
                    free = false;
                    break;
                }
            if (!free)
                continue;
            out.color[pick] = c;
            ++colored;
            int prev_max = max_used;
            max_used = std::max(max_used, c);
            ProperStatus st = descend();
            if (st == ProperStatus::Success)
                return st;
            out.color[pick] = 0;
            --colored;
            max_used = prev_max;
            if (st == ProperStatus::BudgetExhausted)
                return st;
        }
        return ProperStatus::Impossible;
    };
    out.status = descend();
    if (out.status != ProperStatus::Success)
        out.color.assign(g.n, 0);
    return out;
}

std::vector<int> proper_color_planar5(const Graph& g) {
    int n = g.n;
    // smallest-last elimination: repeatedly shed a minimum-degree vertex
    std::vector<int> deg(n), order;
    std::vector<char> gone(n, 0);
    for (int v = 0; v < n; ++v)
        deg[v] = g.degree(v);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!gone[v] && (best < 0 || deg[v] < deg[best]))
                best = v;
        if (deg[best] > 5)
            throw PreconditionError("degree reduction stuck above 5; graph cannot be planar");
        gone[best] = 1;
        order.push_back(best);
        for (int w : g.adj[best])
            if (!gone[w])
                --deg[w];
    }

    std::vector<int> color(n, 0);
    auto lowest_free = [&](int v, const std::vector<int>& col) {
        std::set<int> used;
        for (int w : g.adj[v])
            if (col[w] != 0)
                used.insert(col[w]);
        for (int c = 1; c <= 5; ++c)
            if (!used.count(c))
                return c;
        return 0;
    };
    for (int i = n - 1; i >= 0; --i) {
        int v = order[i];
        if (int c = lowest_free(v, color); c != 0) {
            color[v] = c;
            continue;
        }
        // all five colors meet v: try every two-color chain swap around it
        bool placed = false;
        for (int a = 1; a <= 5 && !placed; ++a) {
            for (int b = a + 1; b <= 5 && !placed; ++b) {
                std::vector<int> trial = color;
                int src = -1;
                for (int w : g.adj[v])
                    if (trial[w] == a) {
                        src = w;
                        break;
                    }
                std::deque<int> q = {src};
                std::set<int> comp = {src};
                while (!q.empty()) {
                    int x = q.front();
                    q.pop_front();
                    for (int y : g.adj[x])
                        if ((trial[y] == a || trial[y] == b) && comp.insert(y).second)
                            q.push_back(y);
                }
                for (int x : comp)
                    trial[x] = trial[x] == a ? b : a;
                if (int c = lowest_free(v, trial); c != 0) {
                    trial[v] = c;
                    color = std::move(trial);
                    placed = true;
                }
            }
        }
        if (!placed)
            throw PreconditionError("all chain swaps failed; graph cannot be planar");
    }

    for (int v = 0; v < n; ++v) {
        check_internal(color[v] >= 1 && color[v] <= 5, "five-coloring left the palette");
        for (int w : g.adj[v])
            check_internal(color[v] != color[w], "five-coloring is not proper");
    }
    return color;
}

PlanarPartialResult partial_cfon_planar(const Graph& g) {
    require_connected_no_isolated(g);
    PlanarPartialResult out;
    out.partition = make_distance3_partition(g, 0);
    out.contracted = build_contracted_graph(g, out.partition);
    ProperColoring pc = proper_coloring(out.contracted, 4);
    std::vector<int> base;
    if (pc.status == ProperStatus::Success) {
        base = pc.color;
        out.fallback_used = false;
        out.bound = 5;
    } else {
        // exact four-coloring unavailable (search too large, or the input was
        // not actually planar): fall back to the chain-swap five-coloring
        base = proper_color_planar5(out.contracted);
        out.fallback_used = true;
        out.bound = 6;
    }
    out.result = lift_partial(g, out.partition, base, out.bound);
    return out;
}

PlanarPartialResult partial_cfon_outerplanar(const Graph& g) {
    require_connected_no_isolated(g);
    PlanarPartialResult out;
    out.partition = make_distance3_partition(g, 0);
    out.contracted = build_contracted_graph(g, out.partition);
    ProperColoring pc = proper_coloring(out.contracted, 3);
    if (pc.status == ProperStatus::Impossible)
        throw PreconditionError(
            "contracted graph admits no proper 3-coloring; input cannot be outerplanar");
    if (pc.status == ProperStatus::BudgetExhausted)
        throw PreconditionError("proper 3-coloring search ran out of budget");
    out.fallback_used = false;
    out.bound = 4;
    out.result = lift_partial(g, out.partition, pc.color, out.bound);
    return out;
}

} // namespace cfon
