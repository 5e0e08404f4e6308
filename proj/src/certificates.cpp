#include "cfon/certificates.hpp"
#include "cfon/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cfon {

namespace {

// first cycle met by a DFS over the still-alive vertices, lowest start first
std::vector<int> find_cycle(const Graph& g, const std::vector<char>& dead) {
    std::vector<int> parent(g.n, -2);
    std::vector<int> cycle;
    auto dfs = [&](auto&& self, int u) -> bool {
        for (int w : g.adj[u]) {
            if (dead[w] || w == parent[u]) continue;
            if (parent[w] != -2) {
                // back edge: w is an ancestor of u on the current path
                for (int x = u; x != w; x = parent[x]) cycle.push_back(x);
                cycle.push_back(w);
                return true;
            }
            parent[w] = u;
            if (self(self, w)) return true;
        }
        return false;
    };
    for (int s = 0; s < g.n; ++s) {
        if (dead[s] || parent[s] != -2) continue;
        parent[s] = -1;
        if (dfs(dfs, s)) return cycle;
    }
    return {};
}

bool fvs_branch(const Graph& g, std::vector<char>& dead, int budget, std::vector<int>& chosen) {
    std::vector<int> cyc = find_cycle(g, dead);
    if (cyc.empty()) return true;
    if (budget == 0) return false;
    std::sort(cyc.begin(), cyc.end());
    for (int v : cyc) {
        dead[v] = 1;
        chosen.push_back(v);
        if (fvs_branch(g, dead, budget - 1, chosen)) return true;
        chosen.pop_back();
        dead[v] = 0;
    }
    return false;
}

// lowest-id induced path on three vertices, as {u, v, w} sorted
std::vector<int> find_induced_p3(const Graph& g, const std::vector<char>& dead) {
    for (int v = 0; v < g.n; ++v) {
        if (dead[v]) continue;
        const auto& nb = g.adj[v];
        for (size_t i = 0; i < nb.size(); ++i) {
            if (dead[nb[i]]) continue;
            for (size_t j = i + 1; j < nb.size(); ++j) {
                if (dead[nb[j]]) continue;
                if (!g.has_edge(nb[i], nb[j])) {
                    std::vector<int> p = {v, nb[i], nb[j]};
                    std::sort(p.begin(), p.end());
                    return p;
                }
            }
        }
    }
    return {};
}

bool modulator_branch(const Graph& g, std::vector<char>& dead, int budget,
                      std::vector<int>& chosen) {
    std::vector<int> p3 = find_induced_p3(g, dead);
    if (p3.empty()) return true;
    if (budget == 0) return false;
    for (int v : p3) {
        dead[v] = 1;
        chosen.push_back(v);
        if (modulator_branch(g, dead, budget - 1, chosen)) return true;
        chosen.pop_back();
        dead[v] = 0;
    }
    return false;
}

} // namespace

bool is_acyclic_without(const Graph& g, const std::vector<int>& removed) {
    std::vector<char> dead(g.n, 0);
    for (int v : removed) dead[v] = 1;
    return find_cycle(g, dead).empty();
}

bool is_cluster_without(const Graph& g, const std::vector<int>& removed) {
    std::vector<char> dead(g.n, 0);
    for (int v : removed) dead[v] = 1;
    return find_induced_p3(g, dead).empty();
}

std::optional<std::vector<int>> compute_fvs_exact(const Graph& g, int k_max) {
    int lim = k_max < 0 ? g.n : k_max;
    for (int k = 0; k <= lim; ++k) {
        std::vector<char> dead(g.n, 0);
        std::vector<int> chosen;
        if (fvs_branch(g, dead, k, chosen)) {
            std::sort(chosen.begin(), chosen.end());
            check_internal(is_acyclic_without(g, chosen), "claimed feedback set leaves a cycle");
            return chosen;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<int>> compute_cluster_modulator_exact(const Graph& g, int d_max) {
    int lim = d_max < 0 ? g.n : d_max;
    for (int d = 0; d <= lim; ++d) {
        std::vector<char> dead(g.n, 0);
        std::vector<int> chosen;
        if (modulator_branch(g, dead, d, chosen)) {
            std::sort(chosen.begin(), chosen.end());
            check_internal(is_cluster_without(g, chosen),
                           "claimed modulator leaves an induced 3-path");
            return chosen;
        }
    }
    return std::nullopt;
}

TypePartition compute_type_partition(const Graph& g) {
    TypePartition out;
    auto same_type = [&](int v, int w) {
        std::vector<int> a, b;
        for (int x : g.adj[v])
            if (x != w) a.push_back(x);
        for (int x : g.adj[w])
            if (x != v) b.push_back(x);
        return a == b;
    };
    std::vector<int> uf(g.n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int v) {
        while (uf[v] != v) v = uf[v] = uf[uf[v]];
        return v;
    };
    for (int v = 0; v < g.n; ++v)
        for (int w = v + 1; w < g.n; ++w)
            if (same_type(v, w)) uf[std::max(find(v), find(w))] = std::min(find(v), find(w));

    std::vector<int> root_class(g.n, -1);
    out.class_of.assign(g.n, -1);
    for (int v = 0; v < g.n; ++v) {
        int r = find(v);
        if (root_class[r] < 0) {
            root_class[r] = (int)out.classes.size();
            out.classes.push_back({});
        }
        out.class_of[v] = root_class[r];
        out.classes[out.class_of[v]].push_back(v);
    }
    int t = (int)out.classes.size();
    out.is_clique.assign(t, 0);
    for (int i = 0; i < t; ++i) {
        const auto& cls = out.classes[i];
        // the relation must come out transitive; verify instead of trusting it
        for (size_t a = 0; a < cls.size(); ++a)
            for (size_t b = a + 1; b < cls.size(); ++b)
                check_internal(same_type(cls[a], cls[b]),
                               "type relation failed to be transitive");
        if (cls.size() >= 2) {
            bool clique = g.has_edge(cls[0], cls[1]);
            for (size_t a = 0; a < cls.size(); ++a)
                for (size_t b = a + 1; b < cls.size(); ++b)
                    check_internal(g.has_edge(cls[a], cls[b]) == clique,
                                   "class is neither a clique nor independent");
            out.is_clique[i] = clique ? 1 : 0;
            if (clique)
                ++out.cl;
            else
                ++out.ind;
        }
    }
    std::vector<std::pair<int, int>> hedges;
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
            bool joined = g.has_edge(out.classes[i][0], out.classes[j][0]);
            for (int a : out.classes[i])
                for (int b : out.classes[j])
                    check_internal(g.has_edge(a, b) == joined,
                                   "classes neither fully joined nor fully apart");
            if (joined) hedges.emplace_back(i, j);
        }
    out.h = Graph::from_edges(t, hedges);
    return out;
}

} // namespace cfon
