#include "cfon/pathwidth_color.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cfon/errors.hpp"
#include "cfon/verify.hpp"

namespace cfon {

namespace {

void require_bag_colored(const std::vector<int>& bag, const SweepState& st) {
    for (int x : bag) {
        if (x < 0 || x >= (int)st.color.size())
            throw PreconditionError("bag vertex " + std::to_string(x + 1) + " out of range");
        if (st.color[x] == 0 || st.unique[x] == 0)
            throw PreconditionError("bag vertex " + std::to_string(x + 1) +
                                    " has no color/unique pair yet");
    }
}

// per free color c carried by exactly one bag vertex w, the tie-break key is
// how many bag vertices share U(x) == C(w)
struct FreeColorInfo {
    FreeColorPartition part;
    std::map<int, int> lone_carrier; // color in f1 -> its carrier vertex
};

FreeColorInfo free_color_info(const std::vector<int>& bag, const SweepState& st) {
    std::set<int> bag_colors;
    for (int x : bag) bag_colors.insert(st.color[x]);
    std::map<int, std::vector<int>> carriers; // U value -> bag vertices carrying it
    for (int x : bag) carriers[st.unique[x]].push_back(x);
    FreeColorInfo out;
    for (const auto& [c, verts] : carriers) {
        if (bag_colors.count(c)) continue;
        if (verts.size() == 1) {
            out.part.f1.push_back(c);
            out.lone_carrier[c] = verts.front();
        } else {
            out.part.fgt1.push_back(c);
        }
    }
    return out;
}

int count_unique_equal(const std::vector<int>& bag, const SweepState& st, int value) {
    int k = 0;
    for (int x : bag)
        if (st.unique[x] == value) ++k;
    return k;
}

// pick C(v): reuse a free color the colored neighbors do not guard, else the
// smallest color absent from the bag's C and U values; `banned` adds the
// partner's color inside a two-vertex introduction
int pick_color(const Graph& g, int v, const std::vector<int>& prev_bag, const SweepState& st,
               const std::set<int>& banned) {
    FreeColorInfo fc = free_color_info(prev_bag, st);
    std::set<int> guarded = banned;
    for (int y : g.adj[v]) {
        if (std::binary_search(prev_bag.begin(), prev_bag.end(), y))
            guarded.insert(st.unique[y]);
    }
    int best = 0, best_key = -1;
    for (int c : fc.part.f1) {
        if (guarded.count(c)) continue;
        int key = count_unique_equal(prev_bag, st, st.color[fc.lone_carrier.at(c)]);
        if (best == 0 || key < best_key) {
            best = c;
            best_key = key;
        }
    }
    if (best != 0) return best;
    for (int c : fc.part.fgt1)
        if (!guarded.count(c)) return c;
    std::set<int> seen = banned;
    for (int x : prev_bag) {
        seen.insert(st.color[x]);
        seen.insert(st.unique[x]);
    }
    int fresh = 1;
    while (seen.count(fresh)) ++fresh;
    return fresh;
}

// pick the neighbor whose color becomes U(v): prefer a neighbor whose own U is
// free in the bag and shared by the fewest bag vertices
int pick_witness_neighbor(const Graph& g, int v, const std::vector<int>& prev_bag,
                          const SweepState& st) {
    FreeColorInfo fc = free_color_info(prev_bag, st);
    std::set<int> free_set(fc.part.f1.begin(), fc.part.f1.end());
    free_set.insert(fc.part.fgt1.begin(), fc.part.fgt1.end());
    int best = -1, best_key = -1;
    int fallback = -1;
    for (int y : g.adj[v]) {
        if (!std::binary_search(prev_bag.begin(), prev_bag.end(), y)) continue;
        if (fallback < 0) fallback = y;
        if (!free_set.count(st.unique[y])) continue;
        int key = count_unique_equal(prev_bag, st, st.unique[y]);
        if (best < 0 || key < best_key) {
            best = y;
            best_key = key;
        }
    }
    if (best >= 0) return best;
    return fallback;
}

} // namespace

FreeColorPartition free_colors(const std::vector<int>& bag, const SweepState& st) {
    require_bag_colored(bag, st);
    return free_color_info(bag, st).part;
}

void assign_intro_one(const Graph& g, int v, const std::vector<int>& prev_bag, SweepState& st) {
    if (v < 0 || v >= g.n) throw PreconditionError("vertex out of range");
    require_bag_colored(prev_bag, st);
    if (st.color[v] != 0)
        throw PreconditionError("vertex " + std::to_string(v + 1) + " is already colored");
    int y = pick_witness_neighbor(g, v, prev_bag, st);
    if (y < 0)
        throw PreconditionError("vertex " + std::to_string(v + 1) +
                                " has no colored neighbor in the previous bag");
    st.color[v] = pick_color(g, v, prev_bag, st, {});
    st.unique[v] = st.color[y];
}

void assign_intro_special(const Graph& g, int v, int vhat, const std::vector<int>& prev_bag,
                          SweepState& st) {
    if (v < 0 || v >= g.n || vhat < 0 || vhat >= g.n)
        throw PreconditionError("vertex out of range");
    if (v == vhat) throw PreconditionError("a two-vertex introduction needs distinct vertices");
    require_bag_colored(prev_bag, st);
    if (st.color[v] != 0 || st.color[vhat] != 0)
        throw PreconditionError("two-vertex introduction on an already colored vertex");
    if (!g.has_edge(v, vhat))
        throw PreconditionError("vertices " + std::to_string(v + 1) + " and " +
                                std::to_string(vhat + 1) + " are not adjacent");
    for (int w : {v, vhat})
        for (int y : g.adj[w])
            if (std::binary_search(prev_bag.begin(), prev_bag.end(), y))
                throw PreconditionError("vertex " + std::to_string(w + 1) +
                                        " has a neighbor in the previous bag");
    st.color[v] = pick_color(g, v, prev_bag, st, {});
    st.color[vhat] = pick_color(g, vhat, prev_bag, st, {st.color[v]});
    st.unique[v] = st.color[vhat];
    st.unique[vhat] = st.color[v];
}

int max_expensive_subset(const std::vector<std::pair<int, int>>& cu) {
    int n = (int)cu.size();
    if (n > 20) throw CapError("expensive-subset search supports at most 20 pairs");
    int best = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        int k = __builtin_popcount(mask);
        if (k <= best) continue;
        std::set<int> vals;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                vals.insert(cu[i].first);
                vals.insert(cu[i].second);
            }
        }
        if ((int)vals.size() == 2 * k) best = k;
    }
    return best;
}

Coloring color_by_pathwidth(const Graph& g, const SemiNicePathDecomposition& snd,
                            SweepAudit* audit) {
    require_connected_no_isolated(g);
    PdVerdict pv = validate_semi_nice(g, snd);
    if (!pv.valid)
        throw PreconditionError("invalid decomposition: " +
                                (pv.violations.empty() ? std::string("unknown")
                                                      : pv.violations.front()));

    SweepState st;
    st.color.assign(g.n, 0);
    st.unique.assign(g.n, 0);
    SweepAudit local;
    local.declared_bound = 5 * (snd.width() + 1) / 3;

    std::vector<int> processed;
    for (const SnBag& b : snd.bags) {
        switch (b.kind) {
            case SnKind::Empty:
            case SnKind::Forget:
                break;
            case SnKind::Introduce: {
                std::vector<int> prev = b.bag;
                prev.erase(std::remove(prev.begin(), prev.end(), b.v), prev.end());
                assign_intro_one(g, b.v, prev, st);
                processed.push_back(b.v);
                break;
            }
            case SnKind::Special: {
                std::vector<int> prev = b.bag;
                prev.erase(std::remove_if(prev.begin(), prev.end(),
                                          [&](int x) { return x == b.v || x == b.vhat; }),
                           prev.end());
                assign_intro_special(g, b.v, b.vhat, prev, st);
                processed.push_back(b.v);
                processed.push_back(b.vhat);
                break;
            }
        }
        local.max_bag = std::max(local.max_bag, (int)b.bag.size());
        if (!b.bag.empty()) {
            std::vector<std::pair<int, int>> cu;
            for (int x : b.bag) cu.emplace_back(st.color[x], st.unique[x]);
            local.max_expensive = std::max(local.max_expensive, max_expensive_subset(cu));
        }
        // the processed prefix must stay conflict-free after every bag: each
        // colored vertex sees its U color on exactly one colored neighbor
        for (int p : processed) {
            int hits = 0;
            for (int y : g.adj[p])
                if (st.color[y] == st.unique[p]) ++hits;
            check_internal(hits == 1, "prefix lost the unique neighbor color at vertex " +
                                          std::to_string(p + 1));
        }
    }

    check_internal((int)processed.size() == g.n, "sweep left vertices uncolored");
    Coloring out((int)g.n);
    out.color = st.color;
    out.witness = st.unique;

    check_internal(verify_cfon(g, out).valid, "sweep produced an invalid coloring");
    check_internal(verify_witness(g, out, out.witness).valid,
                   "sweep recorded a wrong unique-color map");
    check_internal(out.colors_used() <= local.declared_bound,
                   "sweep exceeded the declared color bound");
    check_internal(out.colors_used() <= local.max_bag + 2 * (snd.width() + 1) / 3 + 1,
                   "sweep exceeded the bag-size color bound");
    int need = (3 * local.max_expensive + 1) / 2;
    local.technical_holds = local.max_bag >= need;
    check_internal(local.technical_holds, "expensive subset exceeded the bag-size guarantee");
    if (audit) *audit = local;
    return out;
}

} // namespace cfon
