#include "cfon/fvs_color.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "cfon/certificates.hpp"
#include "cfon/errors.hpp"
#include "cfon/verify.hpp"

namespace cfon {

namespace {

void bfs_orient(const Graph& g, const std::vector<int>& members, int root,
                std::vector<int>& parent, std::vector<int>& depth) {
    for (int v : members) {
        parent[static_cast<size_t>(v)] = -1;
        depth[static_cast<size_t>(v)] = -1;
    }
    std::vector<char> in_tree(static_cast<size_t>(g.n), 0);
    for (int v : members) in_tree[static_cast<size_t>(v)] = 1;
    std::queue<int> q;
    q.push(root);
    depth[static_cast<size_t>(root)] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.adj[static_cast<size_t>(u)]) {
            if (!in_tree[static_cast<size_t>(w)] || depth[static_cast<size_t>(w)] >= 0 ||
                w == root)
                continue;
            parent[static_cast<size_t>(w)] = u;
            depth[static_cast<size_t>(w)] = depth[static_cast<size_t>(u)] + 1;
            q.push(w);
        }
    }
}

int lowest_tree_neighbor(const Graph& g, const RootedForest& rf, int t, int v) {
    for (int w : g.adj[static_cast<size_t>(v)])
        if (rf.tree_id[static_cast<size_t>(w)] == t) return w;
    return -1;
}

// in-place variant shared by the public entry points; witness_vertex records
// the parent (the special vertex for the root)
void paint_tree(const Graph&, const RootedForest& rf, int t, int ca, int cb,
                std::vector<int>& color, std::vector<int>& witness_vertex) {
    const std::vector<int>& members = rf.trees[static_cast<size_t>(t)];
    check_internal(members.size() >= 2, "paint_tree needs at least two vertices");
    int r = rf.root[static_cast<size_t>(t)];
    int s = rf.special[static_cast<size_t>(t)];
    std::vector<int> order = members;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (rf.depth[static_cast<size_t>(a)] != rf.depth[static_cast<size_t>(b)])
            return rf.depth[static_cast<size_t>(a)] < rf.depth[static_cast<size_t>(b)];
        return a < b;
    });
    for (int v : order) {
        if (v == r) {
            color[static_cast<size_t>(v)] = ca;
            witness_vertex[static_cast<size_t>(v)] = s;
        } else if (v == s) {
            color[static_cast<size_t>(v)] = cb;
            witness_vertex[static_cast<size_t>(v)] = r;
        } else if (rf.depth[static_cast<size_t>(v)] == 1) {
            color[static_cast<size_t>(v)] = ca;
            witness_vertex[static_cast<size_t>(v)] = r;
        } else {
            int p = rf.parent[static_cast<size_t>(v)];
            int gp = rf.parent[static_cast<size_t>(p)];
            color[static_cast<size_t>(v)] =
                color[static_cast<size_t>(gp)] == ca ? cb : ca;
            witness_vertex[static_cast<size_t>(v)] = p;
        }
    }
}

// witness colors looked up through the recorded witness vertices, then checked
Coloring finish(const Graph& g, const std::vector<int>& color,
                const std::vector<int>& witness_vertex, bool closed_bound_check, int bound) {
    Coloring out;
    out.color = color;
    out.witness.assign(static_cast<size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v) {
        check_internal(color[static_cast<size_t>(v)] > 0, "vertex left uncolored");
        int wv = witness_vertex[static_cast<size_t>(v)];
        check_internal(wv >= 0, "vertex left without a witness");
        out.witness[static_cast<size_t>(v)] = color[static_cast<size_t>(wv)];
    }
    check_internal(verify_witness(g, out, out.witness).valid, "recorded witness broken");
    Verdict vd = verify_cfon(g, out);
    check_internal(vd.valid, "output fails the open-neighborhood check");
    (void)closed_bound_check;
    check_internal(vd.colors_used <= bound, "color budget exceeded");
    return out;
}

} // namespace

RootedForest build_rooted_forest(const Graph& g, const std::vector<int>& removed) {
    RootedForest rf;
    rf.tree_id.assign(static_cast<size_t>(g.n), -1);
    rf.parent.assign(static_cast<size_t>(g.n), -1);
    rf.depth.assign(static_cast<size_t>(g.n), -1);
    std::vector<char> gone(static_cast<size_t>(g.n), 0);
    for (int v : removed) {
        if (v < 0 || v >= g.n) throw PreconditionError("removed vertex out of range");
        gone[static_cast<size_t>(v)] = 1;
    }
    std::vector<char> seen(static_cast<size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v) {
        if (gone[static_cast<size_t>(v)] || seen[static_cast<size_t>(v)]) continue;
        std::vector<int> members;
        std::queue<int> q;
        q.push(v);
        seen[static_cast<size_t>(v)] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            members.push_back(u);
            for (int w : g.adj[static_cast<size_t>(u)]) {
                if (gone[static_cast<size_t>(w)] || seen[static_cast<size_t>(w)]) continue;
                seen[static_cast<size_t>(w)] = 1;
                q.push(w);
            }
        }
        std::sort(members.begin(), members.end());
        int t = static_cast<int>(rf.trees.size());
        for (int u : members) rf.tree_id[static_cast<size_t>(u)] = t;
        int root = members.front();
        rf.trees.push_back(members);
        rf.root.push_back(root);
        bfs_orient(g, members, root, rf.parent, rf.depth);
        rf.special.push_back(members.size() >= 2 ? lowest_tree_neighbor(g, rf, t, root) : -1);
    }
    return rf;
}

void reroot_tree(const Graph& g, RootedForest& rf, int t, int new_root) {
    check_internal(t >= 0 && t < static_cast<int>(rf.trees.size()), "tree index out of range");
    check_internal(rf.tree_id[static_cast<size_t>(new_root)] == t, "new root not in the tree");
    rf.root[static_cast<size_t>(t)] = new_root;
    bfs_orient(g, rf.trees[static_cast<size_t>(t)], new_root, rf.parent, rf.depth);
    rf.special[static_cast<size_t>(t)] = lowest_tree_neighbor(g, rf, t, new_root);
}

Coloring color_tree(const Graph& g, const RootedForest& rf, int t, int ca, int cb) {
    if (t < 0 || t >= static_cast<int>(rf.trees.size()))
        throw PreconditionError("tree index out of range");
    if (rf.trees[static_cast<size_t>(t)].size() < 2)
        throw PreconditionError("cannot two-color a singleton tree");
    std::vector<int> color(static_cast<size_t>(g.n), 0);
    std::vector<int> witness_vertex(static_cast<size_t>(g.n), -1);
    paint_tree(g, rf, t, ca, cb, color, witness_vertex);
    Coloring out;
    out.color = color;
    out.witness.assign(static_cast<size_t>(g.n), 0);
    for (int v : rf.trees[static_cast<size_t>(t)])
        out.witness[static_cast<size_t>(v)] =
            color[static_cast<size_t>(witness_vertex[static_cast<size_t>(v)])];
    return out;
}

int deepest_neighbor(const Graph& g, const RootedForest& rf, int t, int v) {
    int s = rf.special[static_cast<size_t>(t)];
    int best = -1;
    for (int w : g.adj[static_cast<size_t>(v)]) {
        if (rf.tree_id[static_cast<size_t>(w)] != t) continue;
        if (best < 0) {
            best = w;
            continue;
        }
        int dw = rf.depth[static_cast<size_t>(w)];
        int db = rf.depth[static_cast<size_t>(best)];
        if (dw > db || (dw == db && best == s && w != s)) best = w;
    }
    if (best < 0) throw PreconditionError("vertex has no neighbor in the tree");
    return best;
}

Coloring color_fvs1(const Graph& g, int f) {
    require_connected_no_isolated(g);
    if (f < 0 || f >= g.n) throw PreconditionError("deleted vertex out of range");
    if (!is_acyclic_without(g, {f})) throw PreconditionError("removal must leave a forest");

    RootedForest rf = build_rooted_forest(g, {f});
    std::vector<int> color(static_cast<size_t>(g.n), 0);
    std::vector<int> witness_vertex(static_cast<size_t>(g.n), -1);
    std::vector<int> singles;
    for (size_t t = 0; t < rf.trees.size(); ++t) {
        if (rf.trees[t].size() >= 2) {
            paint_tree(g, rf, static_cast<int>(t), 2, 3, color, witness_vertex);
        } else {
            int w = rf.trees[t][0];
            color[static_cast<size_t>(w)] = 2;
            witness_vertex[static_cast<size_t>(w)] = f; // its only neighbor
            singles.push_back(w);
        }
    }
    color[static_cast<size_t>(f)] = 1;

    if (!singles.empty()) {
        int w = singles.front();
        color[static_cast<size_t>(w)] = 1;
        witness_vertex[static_cast<size_t>(f)] = w;
        return finish(g, color, witness_vertex, false, 3);
    }

    auto try_deep = [&](int t) -> bool {
        int deep = deepest_neighbor(g, rf, t, f);
        if (deep == rf.special[static_cast<size_t>(t)] &&
            g.has_edge(rf.root[static_cast<size_t>(t)], f))
            return false;
        color[static_cast<size_t>(deep)] = 1;
        witness_vertex[static_cast<size_t>(f)] = deep;
        return true;
    };
    for (size_t t = 0; t < rf.trees.size(); ++t)
        if (try_deep(static_cast<int>(t))) return finish(g, color, witness_vertex, false, 3);

    // every tree meets f exactly in root and special; break the symmetry by
    // re-rooting one tree deep enough, or fall back to the all-edges shape
    for (size_t t = 0; t < rf.trees.size(); ++t) {
        if (rf.trees[t].size() < 3) continue;
        int nr = -1;
        for (int w : rf.trees[t]) {
            if (w != rf.root[t] && w != rf.special[t]) {
                nr = w;
                break;
            }
        }
        reroot_tree(g, rf, static_cast<int>(t), nr);
        paint_tree(g, rf, static_cast<int>(t), 2, 3, color, witness_vertex);
        check_internal(try_deep(static_cast<int>(t)),
                       "re-rooting must expose a usable deepest neighbor");
        return finish(g, color, witness_vertex, false, 3);
    }

    const std::vector<int>& keep = rf.trees[0];
    for (int u = 0; u < g.n; ++u) {
        if (u == f || u == keep[0] || u == keep[1]) continue;
        color[static_cast<size_t>(u)] = 2;
    }
    witness_vertex[static_cast<size_t>(f)] = rf.special[0]; // the lone color 3
    return finish(g, color, witness_vertex, false, 3);
}

Coloring color_by_fvs(const Graph& g, std::vector<int> f) {
    require_connected_no_isolated(g);
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    for (int v : f)
        if (v < 0 || v >= g.n) throw PreconditionError("feedback vertex out of range");
    if (!is_acyclic_without(g, f)) throw PreconditionError("removal must leave a forest");
    if (f.size() == 1) return color_fvs1(g, f[0]);

    int nf = static_cast<int>(f.size());
    std::vector<int> fidx(static_cast<size_t>(g.n), 0); // 1-based position in f
    for (int j = 0; j < nf; ++j) fidx[static_cast<size_t>(f[static_cast<size_t>(j)])] = j + 1;

    RootedForest rf = build_rooted_forest(g, f);
    std::vector<int> color(static_cast<size_t>(g.n), 0);
    std::vector<int> witness_vertex(static_cast<size_t>(g.n), -1);
    std::vector<int> singles;
    for (size_t t = 0; t < rf.trees.size(); ++t) {
        if (rf.trees[t].size() >= 2)
            paint_tree(g, rf, static_cast<int>(t), nf + 1, nf + 2, color, witness_vertex);
        else
            singles.push_back(rf.trees[t][0]);
    }

    int cprime = 0;
    for (int v : f) {
        bool in_y = false;
        for (int w : g.adj[static_cast<size_t>(v)])
            if (fidx[static_cast<size_t>(w)] > 0) in_y = true;
        if (!in_y) continue;
        color[static_cast<size_t>(v)] = fidx[static_cast<size_t>(v)];
        if (cprime == 0) cprime = fidx[static_cast<size_t>(v)];
        for (int w : g.adj[static_cast<size_t>(v)]) {
            if (fidx[static_cast<size_t>(w)] > 0) {
                witness_vertex[static_cast<size_t>(v)] = w;
                break;
            }
        }
    }

    for (int w : singles) {
        std::vector<int> uncolored;
        std::map<int, int> seen_colors;
        for (int u : g.adj[static_cast<size_t>(w)]) {
            check_internal(fidx[static_cast<size_t>(u)] > 0,
                           "singleton component neighbor outside the feedback set");
            if (color[static_cast<size_t>(u)] == 0)
                uncolored.push_back(u);
            else
                ++seen_colors[color[static_cast<size_t>(u)]];
        }
        if (!uncolored.empty()) {
            int i1 = fidx[static_cast<size_t>(uncolored[0])];
            color[static_cast<size_t>(uncolored[0])] = i1;
            color[static_cast<size_t>(w)] = i1;
            witness_vertex[static_cast<size_t>(w)] = uncolored[0];
            witness_vertex[static_cast<size_t>(uncolored[0])] = w;
            for (size_t j = 1; j < uncolored.size(); ++j) {
                color[static_cast<size_t>(uncolored[j])] = fidx[static_cast<size_t>(uncolored[1])];
                witness_vertex[static_cast<size_t>(uncolored[j])] = w;
            }
            cprime = i1;
            continue;
        }
        bool has_unique = false;
        for (const auto& [c, cnt] : seen_colors)
            if (cnt == 1) has_unique = true;
        if (has_unique) continue; // colored later with the spare tree color
        bool fixed = false;
        for (int x : g.adj[static_cast<size_t>(w)]) {
            if (seen_colors[color[static_cast<size_t>(x)]] < 2) continue;
            int ix = fidx[static_cast<size_t>(x)];
            int carriers = 0;
            for (int y : g.adj[static_cast<size_t>(w)])
                if (y != x && color[static_cast<size_t>(y)] == ix) ++carriers;
            if (carriers > 0) continue;
            color[static_cast<size_t>(x)] = ix;
            color[static_cast<size_t>(w)] = nf + 1;
            witness_vertex[static_cast<size_t>(w)] = x;
            cprime = ix;
            fixed = true;
            break;
        }
        check_internal(fixed, "duplicated pair without a spare index");
    }
    for (int w : singles) {
        if (color[static_cast<size_t>(w)] != 0) continue;
        color[static_cast<size_t>(w)] = nf + 1;
        int carrier = -1;
        std::map<int, std::pair<int, int>> count_first;
        for (int u : g.adj[static_cast<size_t>(w)]) {
            auto& [cnt, first] = count_first[color[static_cast<size_t>(u)]];
            if (cnt == 0) first = u;
            ++cnt;
        }
        for (const auto& [c, cf] : count_first) {
            if (cf.first == 1) {
                carrier = cf.second;
                break;
            }
        }
        check_internal(carrier >= 0, "skipped singleton lost its unique neighbor");
        witness_vertex[static_cast<size_t>(w)] = carrier;
    }

    int remaining = 0;
    for (int v : f)
        if (color[static_cast<size_t>(v)] == 0) ++remaining;

    auto neighbors_in_tree = [&](int v, int t) {
        std::vector<int> out;
        for (int w : g.adj[static_cast<size_t>(v)])
            if (rf.tree_id[static_cast<size_t>(w)] == t) out.push_back(w);
        return out;
    };

    while (remaining > 0) {
        bool progressed = false;
        // a special vertex adjacent to two or more uncolored feedback vertices
        for (size_t t = 0; t < rf.trees.size() && !progressed; ++t) {
            if (rf.trees[t].size() < 2) continue;
            int s = rf.special[t];
            std::vector<int> unc;
            for (int u : g.adj[static_cast<size_t>(s)])
                if (fidx[static_cast<size_t>(u)] > 0 && color[static_cast<size_t>(u)] == 0)
                    unc.push_back(u);
            if (unc.size() < 2) continue;
            int i1 = fidx[static_cast<size_t>(unc[0])];
            int i2 = fidx[static_cast<size_t>(unc[1])];
            color[static_cast<size_t>(s)] = i1;
            for (int u : unc) {
                color[static_cast<size_t>(u)] = i2;
                witness_vertex[static_cast<size_t>(u)] = s;
            }
            cprime = i2;
            remaining -= static_cast<int>(unc.size());
            progressed = true;
        }
        // a deepest neighbor that is safe to flip
        for (int v : f) {
            if (progressed) break;
            if (color[static_cast<size_t>(v)] != 0) continue;
            for (size_t t = 0; t < rf.trees.size() && !progressed; ++t) {
                if (rf.trees[t].size() < 2 || neighbors_in_tree(v, static_cast<int>(t)).empty())
                    continue;
                int deep = deepest_neighbor(g, rf, static_cast<int>(t), v);
                if (deep == rf.special[t] && g.has_edge(rf.root[t], v)) continue;
                int i = fidx[static_cast<size_t>(v)];
                color[static_cast<size_t>(deep)] = i;
                color[static_cast<size_t>(v)] = i;
                witness_vertex[static_cast<size_t>(v)] = deep;
                cprime = i;
                --remaining;
                progressed = true;
            }
        }
        // only root-special contacts remain: spend the free color
        for (int v : f) {
            if (progressed) break;
            if (color[static_cast<size_t>(v)] != 0) continue;
            bool shape_ok = true;
            int t0 = -1;
            for (size_t t = 0; t < rf.trees.size() && shape_ok; ++t) {
                std::vector<int> nb = neighbors_in_tree(v, static_cast<int>(t));
                if (nb.empty()) continue;
                if (t0 < 0) t0 = static_cast<int>(t);
                if (nb.size() != 2 || nb[0] != rf.root[t] || nb[1] != rf.special[t])
                    shape_ok = false;
            }
            if (!shape_ok || t0 < 0) continue;
            check_internal(cprime != 0, "free color missing although the graph is connected");
            int s = rf.special[static_cast<size_t>(t0)];
            color[static_cast<size_t>(s)] = fidx[static_cast<size_t>(v)];
            color[static_cast<size_t>(v)] = cprime;
            witness_vertex[static_cast<size_t>(v)] = s;
            --remaining;
            progressed = true;
        }
        check_internal(progressed, "no coloring case applies although the graph is connected");
    }
    return finish(g, color, witness_vertex, false, nf + 2);
}

} // namespace cfon
