#include "cfon/outerplanar_color.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <set>
#include <string>
#include <tuple>

#include "cfon/errors.hpp"
#include "cfon/verify.hpp"

namespace cfon {

namespace {

std::pair<int, int> norm_edge(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
}

// Rotate a cyclic vertex list so the lowest id comes first, heading toward the
// smaller of its two cycle neighbors. Pins one representative per cycle.
std::vector<int> canonical_rotation(const std::vector<int>& cyc) {
    int k = (int)cyc.size();
    check_internal(k >= 3, "cycle with fewer than three vertices");
    int at = (int)(std::min_element(cyc.begin(), cyc.end()) - cyc.begin());
    int nxt = cyc[(at + 1) % k], prv = cyc[(at + k - 1) % k];
    int dir = (nxt < prv) ? 1 : -1;
    std::vector<int> out(k);
    for (int i = 0; i < k; ++i) out[i] = cyc[((at + dir * i) % k + k) % k];
    return out;
}

// Walk around `face` from one endpoint of a boundary edge to the other, the
// long way around (avoiding the direct edge). result.front() == from,
// result.back() == to, and every consecutive pair is a boundary edge.
std::vector<int> walk_avoiding_edge(const std::vector<int>& face, int from, int to) {
    int k = (int)face.size();
    int at = -1;
    for (int j = 0; j < k; ++j)
        if (face[j] == from) at = j;
    check_internal(at >= 0, "walk start not on the face");
    int dir;
    if (face[(at + 1) % k] == to) dir = -1;
    else if (face[(at + k - 1) % k] == to) dir = 1;
    else throw InternalError("walk endpoints are not adjacent on the face");
    std::vector<int> out(k);
    for (int j = 0; j < k; ++j) out[j] = face[((at + dir * j) % k + k) % k];
    check_internal(out.back() == to, "face walk did not end at the base edge");
    return out;
}

// Palette permutation: sig[c] is the actual color standing in for template
// color c. Pinned entries come from the state at hand; the remaining template
// slots take the remaining actual colors in ascending order.
using Sigma = std::array<int, 5>;

Sigma make_sigma(std::initializer_list<std::pair<int, int>> pins) {
    Sigma sig{};
    std::array<bool, 5> tmpl_used{}, act_used{};
    for (auto [t, a] : pins) {
        check_internal(t >= 1 && t <= 4 && a >= 1 && a <= 4, "palette value out of range");
        check_internal(!tmpl_used[t] && !act_used[a], "palette permutation clash");
        sig[t] = a;
        tmpl_used[t] = act_used[a] = true;
    }
    int next = 1;
    for (int t = 1; t <= 4; ++t) {
        if (tmpl_used[t]) continue;
        while (act_used[next]) ++next;
        sig[t] = next;
        act_used[next] = true;
    }
    return sig;
}

void put(CUState& st, int v, int c, int u) {
    check_internal(v >= 0 && v < (int)st.c.size(), "vertex out of range");
    check_internal(st.c[v] == 0 && st.u[v] == 0, "vertex colored twice");
    check_internal(c >= 1 && c <= 4 && u >= 1 && u <= 4 && c != u, "bad color/witness pair");
    st.c[v] = c;
    st.u[v] = u;
}

void require_face_edges(const Graph& g, const std::vector<int>& face) {
    int k = (int)face.size();
    if (k < 3) throw PreconditionError("face needs at least three vertices");
    std::set<int> distinct(face.begin(), face.end());
    if ((int)distinct.size() != k) throw PreconditionError("face repeats a vertex");
    for (int i = 0; i < k; ++i)
        if (!g.has_edge(face[i], face[(i + 1) % k]))
            throw PreconditionError("face boundary uses a missing edge");
}

} // namespace

// ---------------------------------------------------------------------------
// Block decomposition
// ---------------------------------------------------------------------------

BlockTree block_decomposition(const Graph& g) {
    if (g.n == 0) throw PreconditionError("graph is empty");
    if (!is_connected(g)) throw PreconditionError("block decomposition requires a connected graph");
    BlockTree bt;
    if (g.n == 1) {
        bt.blocks = {{0}};
        bt.adj = {{}};
        return bt;
    }
    std::vector<int> disc(g.n, 0), low(g.n, 0);
    std::vector<std::pair<int, int>> estack;
    std::vector<std::vector<int>> blocks;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int u, int parent) {
        disc[u] = low[u] = ++timer;
        for (int w : g.adj[u]) {
            if (w == parent) continue;
            if (disc[w] == 0) {
                estack.push_back({u, w});
                dfs(w, u);
                low[u] = std::min(low[u], low[w]);
                if (low[w] >= disc[u]) {
                    std::set<int> comp;
                    while (true) {
                        auto e = estack.back();
                        estack.pop_back();
                        comp.insert(e.first);
                        comp.insert(e.second);
                        if (e == std::make_pair(u, w)) break;
                    }
                    blocks.push_back(std::vector<int>(comp.begin(), comp.end()));
                }
            } else if (disc[w] < disc[u]) {
                estack.push_back({u, w});
                low[u] = std::min(low[u], disc[w]);
            }
        }
    };
    dfs(0, -1);
    check_internal(estack.empty(), "unconsumed edges after block search");
    std::sort(blocks.begin(), blocks.end());
    bt.blocks = blocks;
    std::map<int, std::vector<int>> owner;
    for (int i = 0; i < (int)blocks.size(); ++i)
        for (int v : blocks[i]) owner[v].push_back(i);
    bt.adj.assign(blocks.size(), {});
    for (auto& [v, bl] : owner) {
        if (bl.size() < 2) continue;
        bt.cut_vertices.push_back(v);
        for (int i : bl)
            for (int j : bl)
                if (i != j) bt.adj[i].push_back(j);
    }
    for (auto& a : bt.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return bt;
}

// ---------------------------------------------------------------------------
// Outer cycle recovery
// ---------------------------------------------------------------------------

OuterCycle outer_cycle(const Graph& block) {
    int n = block.n;
    if (n < 3) throw PreconditionError("outer cycle needs a block with at least three vertices");
    if (block.edge_count() > 2 * n - 3)
        throw PreconditionError("not outerplanar: block has more than 2n-3 edges");
    BlockTree bt = block_decomposition(block); // also rejects disconnected input
    if (bt.blocks.size() != 1)
        throw PreconditionError("outer cycle requires a 2-connected block");

    // Shrink: repeatedly shortcut the lowest-id degree-2 vertex. In an
    // outerplanar block every shortcut keeps the graph an outerplanar block,
    // and one degree-2 vertex always exists while more than three remain.
    std::vector<std::set<int>> adj(n);
    for (auto [u, v] : block.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<std::array<int, 3>> removed; // vertex, left neighbor, right neighbor
    std::vector<char> alive(n, 1);
    int nv = n;
    while (nv > 3) {
        int v = -1;
        for (int i = 0; i < n; ++i)
            if (alive[i] && adj[i].size() == 2) {
                v = i;
                break;
            }
        if (v < 0) throw PreconditionError("not outerplanar: contraction found no degree-2 vertex");
        auto it = adj[v].begin();
        int u = *it, w = *std::next(it);
        adj[u].erase(v);
        adj[w].erase(v);
        adj[u].insert(w);
        adj[w].insert(u);
        adj[v].clear();
        alive[v] = 0;
        --nv;
        removed.push_back({v, u, w});
    }
    std::vector<int> rem;
    for (int i = 0; i < n; ++i)
        if (alive[i]) rem.push_back(i);
    check_internal((int)rem.size() == 3, "contraction did not stop at three vertices");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!adj[rem[i]].count(rem[j]))
                throw PreconditionError("not outerplanar: contraction did not end in a triangle");

    // Expand: re-insert vertices in reverse order. Each one must split an
    // edge of the current cycle; if its two neighbors are no longer adjacent
    // on the cycle the graph was not outerplanar.
    std::vector<int> cyc = {rem[0], rem[1], rem[2]};
    for (auto it2 = removed.rbegin(); it2 != removed.rend(); ++it2) {
        auto [v, u, w] = *it2;
        int k = (int)cyc.size(), at = -1;
        for (int i = 0; i < k; ++i) {
            int a = cyc[i], b = cyc[(i + 1) % k];
            if ((a == u && b == w) || (a == w && b == u)) {
                at = i;
                break;
            }
        }
        if (at < 0) throw PreconditionError("not outerplanar: failed to rebuild the outer cycle");
        cyc.insert(cyc.begin() + at + 1, v);
    }
    check_internal((int)cyc.size() == n, "outer cycle misses vertices");
    for (int i = 0; i < n; ++i)
        if (!block.has_edge(cyc[i], cyc[(i + 1) % n]))
            throw PreconditionError("not outerplanar: rebuilt cycle uses a missing edge");

    OuterCycle oc;
    oc.cycle = canonical_rotation(cyc);
    std::set<std::pair<int, int>> cyc_edges;
    for (int i = 0; i < n; ++i) cyc_edges.insert(norm_edge(oc.cycle[i], oc.cycle[(i + 1) % n]));
    for (auto e : block.edges())
        if (!cyc_edges.count(e)) oc.chords.push_back(e);
    std::sort(oc.chords.begin(), oc.chords.end());
    return oc;
}

// ---------------------------------------------------------------------------
// Inner faces and ear order
// ---------------------------------------------------------------------------

EarDecomposition ear_decomposition(const Graph& block, const OuterCycle& oc, int f0) {
    int n = block.n;
    check_internal(n >= 3 && (int)oc.cycle.size() == n, "outer cycle does not match the block");
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        int v = oc.cycle[i];
        check_internal(v >= 0 && v < n && pos[v] < 0, "outer cycle is not a permutation");
        pos[v] = i;
    }
    // Chords as position intervals (a < b) along the cycle order.
    std::vector<std::pair<int, int>> iv;
    for (auto [u, v] : oc.chords) {
        int a = pos[u], b = pos[v];
        if (a > b) std::swap(a, b);
        check_internal(b - a >= 2 && !(a == 0 && b == n - 1), "chord duplicates a cycle edge");
        iv.push_back({a, b});
    }
    for (size_t i = 0; i < iv.size(); ++i)
        for (size_t j = i + 1; j < iv.size(); ++j) {
            auto [a, b] = iv[i];
            auto [c, d] = iv[j];
            if ((a < c && c < b && b < d) || (c < a && a < d && d < b))
                throw PreconditionError("not outerplanar: crossing chords");
        }
    std::vector<std::vector<int>> rights(n); // chord right ends per left end, descending
    for (auto [a, b] : iv) rights[a].push_back(b);
    for (auto& r : rights) std::sort(r.begin(), r.end(), std::greater<int>());

    // Peel regions breadth-first starting from the region bounded by the
    // closing edge of the canonical cycle (that region becomes face 0). Each
    // region's boundary is the greedy chain of longest nested intervals.
    EarDecomposition ed;
    std::deque<std::tuple<int, int, int, std::pair<int, int>>> q; // a, b, parent face, shared edge
    q.push_back({0, n - 1, -1, {-1, -1}});
    std::vector<std::tuple<int, int, std::pair<int, int>>> dual_edges;
    while (!q.empty()) {
        auto [a, b, pf, via] = q.front();
        q.pop_front();
        int me = (int)ed.faces.size();
        std::vector<int> chain = {a};
        std::vector<std::pair<int, int>> kids;
        int x = a;
        while (x < b) {
            int nxt = x + 1;
            for (int r : rights[x]) {
                if (r > b) continue;
                if (x == a && r == b) continue; // the region's own base interval
                nxt = r;                        // descending order: first hit is longest
                break;
            }
            if (nxt > x + 1) kids.push_back({x, nxt});
            chain.push_back(nxt);
            x = nxt;
        }
        std::vector<int> fv;
        fv.reserve(chain.size());
        for (int p : chain) fv.push_back(oc.cycle[p]);
        check_internal(fv.size() >= 3, "inner face with fewer than three vertices");
        ed.faces.push_back(fv);
        if (pf >= 0) dual_edges.push_back({pf, me, via});
        for (auto [ka, kb] : kids)
            q.push_back({ka, kb, me, norm_edge(oc.cycle[ka], oc.cycle[kb])});
    }
    int F = (int)ed.faces.size();
    check_internal(F == (int)iv.size() + 1, "face count does not match chord count");

    for (int i = 0; i < F; ++i) {
        const auto& f = ed.faces[i];
        int k = (int)f.size();
        for (int j = 0; j < k; ++j) {
            int a = f[j], b = f[(j + 1) % k];
            check_internal(block.has_edge(a, b), "face boundary uses a missing edge");
            ed.edge_faces[norm_edge(a, b)].push_back(i);
        }
    }
    for (auto& [e, fl] : ed.edge_faces) {
        std::sort(fl.begin(), fl.end());
        check_internal(fl.size() <= 2, "edge borders more than two inner faces");
    }

    // Re-root the face tree at f0; ears come out in breadth-first order with
    // ties broken by ascending face index.
    check_internal(f0 >= 0 && f0 < F, "start face out of range");
    std::vector<std::vector<std::pair<int, std::pair<int, int>>>> dual(F);
    for (auto& [p, c, via] : dual_edges) {
        dual[p].push_back({c, via});
        dual[c].push_back({p, via});
    }
    for (auto& d : dual) std::sort(d.begin(), d.end());
    ed.f0 = f0;
    ed.parent.assign(F, -1);
    ed.base.assign(F, {-1, -1});
    std::vector<char> vis(F, 0);
    std::deque<int> fq = {f0};
    vis[f0] = 1;
    while (!fq.empty()) {
        int f = fq.front();
        fq.pop_front();
        if (f != f0) ed.ear_order.push_back(f);
        for (auto& [nb, via] : dual[f])
            if (!vis[nb]) {
                vis[nb] = 1;
                ed.parent[nb] = f;
                ed.base[nb] = via;
                fq.push_back(nb);
            }
    }
    check_internal((int)ed.ear_order.size() == F - 1, "face tree is not connected");
    ed.colored.assign(F, 0);
    for (int v = 0; v < n; ++v) ed.block_degree[v] = block.degree(v);
    return ed;
}

EarDecomposition relabel_ears(const EarDecomposition& ed, const std::vector<int>& to_global) {
    EarDecomposition out;
    out.f0 = ed.f0;
    out.ear_order = ed.ear_order;
    out.parent = ed.parent;
    out.colored = ed.colored;
    auto mapv = [&](int v) {
        check_internal(v >= 0 && v < (int)to_global.size(), "relabel index out of range");
        return to_global[v];
    };
    for (const auto& f : ed.faces) {
        std::vector<int> nf;
        nf.reserve(f.size());
        for (int v : f) nf.push_back(mapv(v));
        out.faces.push_back(std::move(nf));
    }
    for (auto [a, b] : ed.base)
        out.base.push_back(a < 0 ? std::make_pair(-1, -1) : norm_edge(mapv(a), mapv(b)));
    for (const auto& [e, fl] : ed.edge_faces)
        out.edge_faces[norm_edge(mapv(e.first), mapv(e.second))] = fl;
    for (auto [v, d] : ed.block_degree) out.block_degree[mapv(v)] = d;
    return out;
}

// ---------------------------------------------------------------------------
// State audit
// ---------------------------------------------------------------------------

void audit_state(const Graph& g, const CUState& st) {
    check_internal((int)st.c.size() == g.n && (int)st.u.size() == g.n,
                   "state size does not match the graph");
    for (int v = 0; v < g.n; ++v) {
        int c = st.c[v], u = st.u[v];
        check_internal((c == 0) == (u == 0), "color and witness must be set together");
        if (c == 0) continue;
        check_internal(c >= 1 && c <= 4 && u >= 1 && u <= 4, "palette out of range");
        check_internal(c != u, "vertex witnesses its own color");
        int hits = 0;
        for (int w : g.adj[v])
            if (st.c[w] == u) ++hits;
        check_internal(hits == 1, "witness color not unique in the open neighborhood");
    }
    for (auto [a, b] : g.edges()) {
        if (st.c[a] == 0 || st.c[b] == 0) continue;
        if (st.exempt.count(norm_edge(a, b))) continue;
        check_internal(st.c[a] != st.c[b], "colored edge endpoints share a color");
        std::set<int> vals = {st.c[a], st.u[a], st.c[b], st.u[b]};
        check_internal(vals.size() == 3, "colored edge does not carry exactly three palette values");
    }
}

// ---------------------------------------------------------------------------
// Face procedures
// ---------------------------------------------------------------------------

void color_face_fresh(const Graph& g, const std::vector<int>& face, CUState& st) {
    require_face_edges(g, face);
    int k = (int)face.size();
    if (k == 5) throw PreconditionError("an uncolored 5-face needs a differently colored start face");
    for (int v : face)
        if (st.c[v] != 0) throw PreconditionError("face is not fully uncolored");
    std::vector<int> rot = canonical_rotation(face);
    std::vector<int> col(k);
    for (int i = 0; i < k; ++i) col[i] = i < 3 ? i + 1 : col[i - 3];
    if (k % 3 == 1) {
        col[k - 1] = 4;
    } else if (k % 3 == 2) {
        col[k - 4] = 4;
        col[k - 3] = 2;
        col[k - 2] = 3;
        col[k - 1] = 4;
    }
    for (int i = 0; i < k; ++i) put(st, rot[i], col[i], col[(i + 1) % k]);
    audit_state(g, st);
}

void color_face_one_precolored(const Graph& g, const std::vector<int>& face, int v, CUState& st) {
    require_face_edges(g, face);
    int k = (int)face.size();
    int at = -1;
    for (int j = 0; j < k; ++j)
        if (face[j] == v) at = j;
    if (at < 0) throw PreconditionError("start vertex is not on the face");
    if (st.c[v] == 0) throw PreconditionError("start vertex is not colored");
    for (int w : face)
        if (w != v && st.c[w] != 0)
            throw PreconditionError("face has more than one colored vertex");
    int nxt = face[(at + 1) % k], prv = face[(at + k - 1) % k];
    int dir = (nxt < prv) ? 1 : -1;
    std::vector<int> rot(k);
    for (int j = 0; j < k; ++j) rot[j] = face[((at + dir * j) % k + k) % k];
    Sigma sig = make_sigma({{1, st.c[v]}, {2, st.u[v]}});
    if (k == 3) {
        put(st, rot[1], sig[3], sig[1]);
        put(st, rot[2], sig[4], sig[1]);
    } else {
        std::vector<int> col(k);
        col[0] = 1;
        col[1] = 3;
        col[2] = 2;
        for (int i = 3; i < k; ++i) col[i] = col[i - 3];
        if (k % 3 == 2) col[k - 2] = 4;
        else col[k - 1] = 4;
        for (int i = 1; i < k; ++i) put(st, rot[i], sig[col[i]], sig[col[(i + 1) % k]]);
    }
    audit_state(g, st);
}

void color_face_cucv_same(const Graph& g, const std::vector<int>& face, std::pair<int, int> edge,
                          CUState& st) {
    require_face_edges(g, face);
    int k = (int)face.size();
    if (k < 4)
        throw PreconditionError("equal-colored base endpoints need a face of at least four vertices");
    int v1 = std::min(edge.first, edge.second), v2 = std::max(edge.first, edge.second);
    bool on_face = false;
    for (int j = 0; j < k; ++j) {
        int a = face[j], b = face[(j + 1) % k];
        if ((a == v1 && b == v2) || (a == v2 && b == v1)) on_face = true;
    }
    if (!on_face) throw PreconditionError("base edge is not on the face boundary");
    if (st.c[v1] == 0 || st.c[v1] != st.c[v2])
        throw PreconditionError("base endpoints must carry the same color");
    if (st.u[v1] == st.u[v2])
        throw PreconditionError("base endpoints must carry distinct witness colors");
    for (int w : face)
        if (w != v1 && w != v2 && st.c[w] != 0)
            throw PreconditionError("face interior is not uncolored");
    // The shared-color edge violates the three-value edge rule by design; it
    // must stay excused, and after this call it borders no uncolored face.
    st.exempt.insert(norm_edge(v1, v2));
    Sigma sig = make_sigma({{4, st.c[v1]}, {1, st.u[v1]}, {2, st.u[v2]}});
    std::vector<int> path = walk_avoiding_edge(face, v2, v1); // v2, v3, ..., vk, v1
    std::vector<int> col(k + 1, 0), wit(k + 1, 0);            // template values, 1-based
    if (k == 4) {
        col[3] = 1;
        col[4] = 3;
        wit[3] = 4;
        wit[4] = 4;
    } else if (k == 5) {
        col[3] = 1;
        col[4] = 2;
        col[5] = 3;
        wit[3] = 2;
        wit[4] = 3;
        wit[5] = 4;
    } else {
        col[1] = 4;
        col[2] = 4;
        col[3] = 3;
        col[4] = 2;
        for (int i = 5; i <= k; ++i) col[i] = col[i - 3];
        if (k % 3 == 0) {
            col[k - 1] = 1;
        } else if (k % 3 == 2) {
            col[k - 1] = 1;
            col[k] = 2;
        }
        for (int i = 3; i < k; ++i) wit[i] = col[i + 1];
        wit[k] = 4;
    }
    for (int i = 3; i <= k; ++i) put(st, path[i - 2], sig[col[i]], sig[wit[i]]);
    audit_state(g, st);
}

// ---------------------------------------------------------------------------
// Ear coloring
// ---------------------------------------------------------------------------

void color_ear_path(const Graph& g, EarDecomposition& ed, int face_idx, CUState& st,
                    std::vector<std::string>* log) {
    check_internal(face_idx >= 0 && face_idx < (int)ed.faces.size(), "face index out of range");
    if (ed.colored[face_idx]) throw PreconditionError("ear face is already colored");
    const std::vector<int> face = ed.faces[face_idx];
    auto [ea, eb] = ed.base[face_idx];
    if (ea < 0) throw PreconditionError("ear face has no base edge");
    int k = (int)face.size();
    for (int v : face) {
        if (v == ea || v == eb) {
            if (st.c[v] == 0) throw PreconditionError("ear base endpoint is not colored");
        } else if (st.c[v] != 0) {
            throw PreconditionError("ear interior is already colored");
        }
    }
    auto tag = [&](const std::string& s) {
        if (log) log->push_back(s);
    };
    auto face_behind = [&](int x, int y, int skip) -> int {
        auto it = ed.edge_faces.find(norm_edge(x, y));
        check_internal(it != ed.edge_faces.end(), "edge missing from the face table");
        for (int f : it->second)
            if (f != skip) return f;
        return -1;
    };
    // the face on the far side of an ear-face edge
    auto second_face = [&](int x, int y) -> int { return face_behind(x, y, face_idx); };
    auto apex = [&](int f, int x, int y) -> int {
        for (int v : ed.faces[f])
            if (v != x && v != y) return v;
        throw InternalError("triangle face without a third vertex");
    };
    auto finish = [&]() {
        audit_state(g, st);
        ed.colored[face_idx] = 1;
    };

    if (st.u[ea] != st.u[eb]) {
        // Distinct witness colors. The endpoints must carry distinct colors
        // and exactly one endpoint's witness color equals the other's color;
        // that endpoint becomes the far end of the walk.
        bool a_cross = (st.u[ea] == st.c[eb]);
        bool b_cross = (st.u[eb] == st.c[ea]);
        if (st.c[ea] == st.c[eb] || a_cross == b_cross)
            throw InternalError("ear base outside the two expected endpoint shapes");
        int v1 = a_cross ? ea : eb;
        int v2 = a_cross ? eb : ea;
        Sigma sig = make_sigma({{1, st.c[v1]}, {2, st.c[v2]}, {3, st.u[v2]}});
        std::vector<int> path = walk_avoiding_edge(face, v2, v1);
        if (k == 3) {
            put(st, path[1], sig[4], sig[2]);
        } else if (k == 4) {
            put(st, path[1], sig[4], sig[3]);
            put(st, path[2], sig[3], sig[1]);
        } else {
            std::vector<int> col(k + 1, 0);
            col[1] = 1;
            col[2] = 2;
            col[3] = 1;
            col[4] = 3;
            col[5] = 4;
            for (int i = 6; i <= k; ++i) col[i] = col[i - 3];
            if (k % 3 == 0) {
                col[k - 1] = 2;
                col[k] = 4;
            } else if (k % 3 == 1) {
                col[k - 1] = 2;
            }
            for (int i = 3; i <= k; ++i)
                put(st, path[i - 2], sig[col[i]], sig[i < k ? col[i + 1] : 1]);
        }
        tag("ear c1 k=" + std::to_string(k));
        finish();
        return;
    }

    // Equal witness colors; the endpoint colors must differ.
    if (st.c[ea] == st.c[eb]) throw InternalError("ear base endpoints share a color");
    int v1 = std::min(ea, eb), v2 = std::max(ea, eb);

    if (k == 3) {
        int mid = walk_avoiding_edge(face, v2, v1)[1];
        auto dit = ed.block_degree.find(mid);
        check_internal(dit != ed.block_degree.end(), "vertex missing from the degree table");
        if (dit->second == 2) {
            // (a) the middle vertex has no further block neighbors
            Sigma sig = make_sigma({{1, st.c[v1]}, {2, st.c[v2]}, {3, st.u[v1]}});
            put(st, mid, sig[4], sig[2]);
            st.exempt.insert(norm_edge(v1, mid));
            tag("ear c2ia");
            finish();
            return;
        }
        int f1 = second_face(v1, mid), f2 = second_face(v2, mid);
        if (f1 < 0 || f2 < 0) {
            // (b) one new edge borders no further inner face; orient so that
            // edge sits on the v2 side
            if (f2 >= 0) {
                std::swap(v1, v2);
                std::swap(f1, f2);
            }
            Sigma sig = make_sigma({{1, st.c[v1]}, {2, st.c[v2]}, {3, st.u[v1]}});
            put(st, mid, sig[4], sig[1]);
            st.exempt.insert(norm_edge(v2, mid));
            tag("ear c2ib");
            finish();
            return;
        }
        auto open_nontri = [&](int f) { return !ed.colored[f] && (int)ed.faces[f].size() != 3; };
        if (open_nontri(f2) || open_nontri(f1)) {
            // (c) one new edge borders an uncolored face larger than a
            // triangle; color the middle vertex and sweep that face at once
            if (!open_nontri(f2)) {
                std::swap(v1, v2);
                std::swap(f1, f2);
            }
            Sigma sig = make_sigma({{1, st.c[v1]}, {2, st.c[v2]}, {3, st.u[v1]}});
            put(st, mid, sig[4], sig[1]);
            st.exempt.insert(norm_edge(v2, mid));
            const std::vector<int>& nb = ed.faces[f2];
            int kf = (int)nb.size();
            std::vector<int> wpath = walk_avoiding_edge(nb, mid, v2); // mid, w1, ..., v2
            int nw = kf - 2;
            std::vector<int> col(nw + 1, 0), wit(nw + 1, 0);
            col[1] = 3;
            if (nw >= 2) col[2] = 1;
            if (nw >= 3) col[3] = 4;
            for (int i = 4; i <= nw; ++i) col[i] = col[i - 3];
            if (kf % 3 == 0) {
                col[nw - 2] = 2;
                col[nw - 1] = 1;
                col[nw] = 4;
            }
            if (kf == 6) {
                wit[1] = 4;
                wit[2] = 3;
                wit[3] = 2;
                wit[4] = 2;
            } else {
                for (int i = 1; i < nw; ++i) wit[i] = col[i + 1];
                wit[nw] = 2;
            }
            for (int i = 1; i <= nw; ++i) put(st, wpath[i], sig[col[i]], sig[wit[i]]);
            ed.colored[f2] = 1;
            tag("ear c2ic k=" + std::to_string(kf));
            finish();
            return;
        }
        // (d) both new edges border uncolored triangles
        check_internal(!ed.colored[f1] && !ed.colored[f2] && (int)ed.faces[f1].size() == 3 &&
                           (int)ed.faces[f2].size() == 3,
                       "short ear dispatch fell through");
        int x = apex(f1, v1, mid), y = apex(f2, v2, mid);
        // a third uncolored triangle resting on the apex-to-middle edge,
        // beyond the side triangle the apex came from
        auto stacked_tri = [&](int ap, int side) -> int {
            int f = face_behind(ap, mid, side);
            if (f >= 0 && !ed.colored[f] && (int)ed.faces[f].size() == 3) return f;
            return -1;
        };
        int zf = stacked_tri(x, f1);
        if (zf < 0) {
            int zf2 = stacked_tri(y, f2);
            if (zf2 >= 0) {
                std::swap(v1, v2);
                std::swap(f1, f2);
                std::swap(x, y);
                zf = zf2;
            }
        }
        Sigma sig = make_sigma({{1, st.c[v1]}, {2, st.c[v2]}, {3, st.u[v1]}});
        if (zf >= 0) {
            int z = apex(zf, x, mid);
            put(st, mid, sig[1], sig[4]);
            put(st, x, sig[2], sig[3]);
            put(st, y, sig[4], sig[2]);
            put(st, z, sig[3], sig[1]);
            st.exempt.insert(norm_edge(v1, mid));
            st.exempt.insert(norm_edge(v2, mid));
            st.exempt.insert(norm_edge(x, mid));
            ed.colored[f1] = ed.colored[f2] = ed.colored[zf] = 1;
            tag("ear c2id-z");
        } else {
            put(st, mid, sig[4], sig[2]);
            put(st, x, sig[4], sig[1]);
            put(st, y, sig[1], sig[2]);
            st.exempt.insert(norm_edge(v1, mid));
            st.exempt.insert(norm_edge(x, mid));
            ed.colored[f1] = ed.colored[f2] = 1;
            tag("ear c2id-flat");
            int fx = face_behind(x, mid, f1);
            if (fx >= 0 && !ed.colored[fx]) {
                // x and mid share a color, so the open face behind their edge
                // is finished right away with the equal-color sweep
                check_internal((int)ed.faces[fx].size() >= 4, "stacked triangle escaped the probe");
                color_face_cucv_same(g, ed.faces[fx], norm_edge(x, mid), st);
                ed.colored[fx] = 1;
                tag("follow cucv k=" + std::to_string(ed.faces[fx].size()));
            }
        }
        finish();
        return;
    }

    Sigma sig = make_sigma({{1, st.c[v1]}, {2, st.c[v2]}, {3, st.u[v1]}});
    std::vector<int> path = walk_avoiding_edge(face, v2, v1);
    if (k == 4) {
        int v3 = path[1], v4 = path[2];
        int fm = second_face(v3, v4);
        st.exempt.insert(norm_edge(v3, v4));
        if (fm >= 0 && !ed.colored[fm] && (int)ed.faces[fm].size() == 3) {
            // the middle edge borders an uncolored triangle: color its apex too
            int x = apex(fm, v3, v4);
            put(st, v3, sig[1], sig[2]);
            put(st, v4, sig[4], sig[3]);
            put(st, x, sig[3], sig[1]);
            ed.colored[fm] = 1;
            tag("ear c2iia");
        } else {
            put(st, v3, sig[4], sig[2]);
            put(st, v4, sig[4], sig[1]);
            tag("ear c2iib");
            if (fm >= 0 && !ed.colored[fm]) {
                check_internal((int)ed.faces[fm].size() >= 4, "triangle escaped the middle-edge probe");
                color_face_cucv_same(g, ed.faces[fm], norm_edge(v3, v4), st);
                ed.colored[fm] = 1;
                tag("follow cucv k=" + std::to_string(ed.faces[fm].size()));
            }
        }
        finish();
        return;
    }
    if (k == 5) {
        put(st, path[1], sig[1], sig[3]);
        put(st, path[2], sig[3], sig[2]);
        put(st, path[3], sig[2], sig[1]);
        tag("ear c2iii");
        finish();
        return;
    }
    std::vector<int> col(k + 1, 0);
    col[1] = 1;
    col[2] = 2;
    col[3] = 4;
    col[4] = 3;
    for (int i = 5; i <= k; ++i) col[i] = col[i - 3];
    if (k % 3 == 1) {
        col[k - 2] = 1;
        col[k] = 2;
    }
    for (int i = 3; i <= k; ++i) put(st, path[i - 2], sig[col[i]], sig[i < k ? col[i + 1] : 1]);
    tag("ear c2iv k=" + std::to_string(k));
    finish();
}

// ---------------------------------------------------------------------------
// Blocks whose inner faces are all 5-cycles
// ---------------------------------------------------------------------------

void color_all_5_faces_block(const Graph& g, EarDecomposition& ed, CUState& st,
                             std::vector<std::string>* log) {
    for (const auto& f : ed.faces)
        if (f.size() != 5)
            throw PreconditionError("three-color sweep needs every inner face to be a 5-cycle");
    auto tag = [&](const std::string& s) {
        if (log) log->push_back(s);
    };
    // Inside this sweep the edge rule is suspended wholesale: three colors
    // cannot carry four distinct palette values across an edge. Every face
    // edge is excused; the block-completion audit still demands that excused
    // edges border no uncolored face, which holds because the sweep colors
    // every face of the block.
    auto exempt_face = [&](const std::vector<int>& f) {
        for (size_t i = 0; i < f.size(); ++i)
            st.exempt.insert(norm_edge(f[i], f[(i + 1) % f.size()]));
    };
    const std::vector<int>& f0 = ed.faces[ed.f0];
    for (int v : f0)
        if (st.c[v] != 0) throw PreconditionError("start face is not fully uncolored");
    std::vector<int> rot = canonical_rotation(f0);
    static const int c0[5] = {1, 1, 2, 2, 3};
    static const int u0[5] = {3, 2, 1, 3, 1};
    for (int i = 0; i < 5; ++i) put(st, rot[i], c0[i], u0[i]);
    exempt_face(f0);
    ed.colored[ed.f0] = 1;
    tag("lemma6-f0");
    audit_state(g, st);

    static const int E1c[3] = {2, 2, 3}, E1u[3] = {1, 3, 1}; // same color, distinct witnesses
    static const int E2c[3] = {1, 3, 3}, E2u[3] = {2, 1, 1}; // one cross match
    static const int E3c[3] = {2, 3, 1}, E3u[3] = {3, 2, 3}; // both cross matches
    static const int E4c[3] = {1, 2, 3}, E4u[3] = {2, 3, 1}; // same color, same witness
    for (int fi : ed.ear_order) {
        check_internal(!ed.colored[fi], "pentagon processed twice");
        const std::vector<int>& face = ed.faces[fi];
        auto [ba, bb] = ed.base[fi];
        int w1 = std::min(ba, bb), w2 = std::max(ba, bb);
        check_internal(st.c[w1] != 0 && st.c[w2] != 0, "pentagon base is not colored");
        int c1 = st.c[w1], c2 = st.c[w2], q1 = st.u[w1], q2 = st.u[w2];
        Sigma sig;
        const int *cc, *uu;
        std::string label;
        if (c1 == c2 && q1 != q2) {
            sig = make_sigma({{1, c1}, {2, q1}, {3, q2}});
            cc = E1c;
            uu = E1u;
            label = "pent-c1";
        } else if (c1 == c2) {
            sig = make_sigma({{1, c1}, {2, q1}});
            cc = E4c;
            uu = E4u;
            label = "pent-c4";
        } else if (q1 == c2 && q2 == c1) {
            sig = make_sigma({{1, c1}, {2, c2}});
            cc = E3c;
            uu = E3u;
            label = "pent-c3";
        } else if (q1 == c2) {
            sig = make_sigma({{1, c1}, {2, c2}, {3, q2}});
            cc = E2c;
            uu = E2u;
            label = "pent-c2";
        } else if (q2 == c1) {
            std::swap(w1, w2);
            sig = make_sigma({{1, st.c[w1]}, {2, st.c[w2]}, {3, st.u[w2]}});
            cc = E2c;
            uu = E2u;
            label = "pent-c2";
        } else {
            throw InternalError("pentagon base outside the four expected shapes");
        }
        std::vector<int> path = walk_avoiding_edge(face, w2, w1); // w2, w3, w4, w5, w1
        for (int i = 0; i < 3; ++i) put(st, path[i + 1], sig[cc[i]], sig[uu[i]]);
        exempt_face(face);
        ed.colored[fi] = 1;
        tag(label);
        audit_state(g, st);
    }
    for (char fl : ed.colored) check_internal(fl, "pentagon left uncolored");
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

OuterplanarRun color_outerplanar_run(const Graph& g) {
    require_connected_no_isolated(g);
    OuterplanarRun run;
    CUState st(g.n);
    BlockTree bt = block_decomposition(g);
    run.blocks = (int)bt.blocks.size();
    std::map<int, std::vector<int>> owner;
    for (int i = 0; i < run.blocks; ++i)
        for (int v : bt.blocks[i]) owner[v].push_back(i);

    // Blocks breadth-first from the block containing vertex 0 (lowest block
    // index on ties); each later block is entered through the cut vertex that
    // discovered it.
    int root = owner.at(0).front();
    std::vector<int> via(run.blocks, -1), order;
    std::vector<char> seen(run.blocks, 0);
    std::deque<int> bq = {root};
    seen[root] = 1;
    while (!bq.empty()) {
        int b = bq.front();
        bq.pop_front();
        order.push_back(b);
        for (int v : bt.blocks[b])
            for (int nb : owner.at(v))
                if (!seen[nb]) {
                    seen[nb] = 1;
                    via[nb] = v;
                    bq.push_back(nb);
                }
    }
    check_internal((int)order.size() == run.blocks, "block sweep missed a block");

    for (int b : order) {
        const std::vector<int>& verts = bt.blocks[b];
        check_internal(verts.size() >= 2, "single-vertex block in a connected graph");
        if (verts.size() == 2) {
            int p = verts[0], q = verts[1];
            if (via[b] < 0) {
                put(st, p, 1, 2);
                put(st, q, 2, 1);
                // a lone edge cannot carry three palette values across it
                st.exempt.insert(norm_edge(p, q));
                run.log.push_back("bridge-root");
            } else {
                int x = via[b], w = (p == x) ? q : p;
                Sigma sig = make_sigma({{1, st.c[x]}, {2, st.u[x]}});
                put(st, w, sig[3], sig[1]);
                run.log.push_back("bridge-attach");
            }
            audit_state(g, st);
            continue;
        }

        Graph bg = g.induced(verts);
        OuterCycle oc = outer_cycle(bg);
        EarDecomposition probe = ear_decomposition(bg, oc, 0);
        int f0 = -1;
        bool all_pent = false;
        if (via[b] < 0) {
            for (int i = 0; i < (int)probe.faces.size(); ++i)
                if (probe.faces[i].size() != 5) {
                    f0 = i;
                    break;
                }
            if (f0 < 0) {
                all_pent = true;
                f0 = 0;
            }
        } else {
            int xl = (int)(std::lower_bound(verts.begin(), verts.end(), via[b]) - verts.begin());
            check_internal(xl < (int)verts.size() && verts[xl] == via[b],
                           "entry vertex missing from the block");
            for (int i = 0; i < (int)probe.faces.size() && f0 < 0; ++i)
                for (int v : probe.faces[i])
                    if (v == xl) {
                        f0 = i;
                        break;
                    }
            check_internal(f0 >= 0, "entry vertex lies on no inner face");
        }
        EarDecomposition ed =
            relabel_ears(f0 == 0 ? probe : ear_decomposition(bg, oc, f0), verts);

        if (all_pent) {
            color_all_5_faces_block(g, ed, st, &run.log);
            if (run.blocks == 1) run.three_color_block = true;
        } else {
            if (via[b] < 0) {
                color_face_fresh(g, ed.faces[f0], st);
                run.log.push_back("fresh k=" + std::to_string(ed.faces[f0].size()));
            } else {
                color_face_one_precolored(g, ed.faces[f0], via[b], st);
                run.log.push_back("one-precolored k=" + std::to_string(ed.faces[f0].size()));
            }
            ed.colored[f0] = 1;
            for (int fi : ed.ear_order) {
                if (ed.colored[fi]) continue; // consumed by an earlier ear
                color_ear_path(g, ed, fi, st, &run.log);
            }
        }

        for (char fl : ed.colored) check_internal(fl, "inner face left uncolored");
        for (const auto& [e, fl] : ed.edge_faces)
            if (st.exempt.count(e))
                for (int f : fl)
                    check_internal(ed.colored[f], "excused edge borders an uncolored face");
    }

    for (int v = 0; v < g.n; ++v) check_internal(st.c[v] != 0, "vertex left uncolored");
    Coloring out(g.n);
    out.color = st.c;
    out.witness = st.u;
    Verdict vd = verify_cfon(g, out);
    check_internal(vd.valid, "construction produced an invalid coloring");
    check_internal(out.max_color() <= 4, "construction exceeded four colors");
    if (run.three_color_block)
        check_internal(out.max_color() <= 3, "all-pentagon graph exceeded three colors");
    Verdict wd = verify_witness(g, out, out.witness);
    check_internal(wd.valid, "recorded witness colors are wrong");
    run.result = std::move(out);
    run.state = std::move(st);
    return run;
}

Coloring color_outerplanar(const Graph& g) { return color_outerplanar_run(g).result; }

} // namespace cfon
