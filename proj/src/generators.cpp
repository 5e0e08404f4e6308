#include "cfon/generators.hpp"
#include "cfon/errors.hpp"

#include <algorithm>
#include <random>

namespace cfon {

namespace {
using Edges = std::vector<std::pair<int, int>>;

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return (int)std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}
} // namespace

Graph generate_path(int n) {
    if (n < 2) throw PreconditionError("path needs at least 2 vertices");
    Edges e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

Graph generate_cycle(int n) {
    if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
    Edges e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, e);
}

Graph generate_star(int n) {
    if (n < 2) throw PreconditionError("star needs at least 2 vertices");
    Edges e;
    for (int i = 1; i < n; ++i) e.emplace_back(0, i);
    return Graph::from_edges(n, e);
}

Graph generate_random_tree(int n, uint64_t seed) {
    if (n < 2) throw PreconditionError("tree needs at least 2 vertices");
    std::mt19937_64 rng(seed);
    Edges e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, uniform_int(rng, 0, i - 1));
    return Graph::from_edges(n, e);
}

namespace {
// triangulate the polygon arc a..b (cycle positions) by picking a middle
void triangulate_arc(std::mt19937_64& rng, int a, int b, Edges& e) {
    if (b - a < 2) return;
    int m = uniform_int(rng, a + 1, b - 1);
    if (m - a >= 2) e.emplace_back(a, m);
    if (b - m >= 2) e.emplace_back(m, b);
    triangulate_arc(rng, a, m, e);
    triangulate_arc(rng, m, b, e);
}
} // namespace

Graph generate_random_maximal_outerplanar(int n, uint64_t seed) {
    if (n < 3) throw PreconditionError("maximal outerplanar graph needs at least 3 vertices");
    std::mt19937_64 rng(seed);
    Edges e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    triangulate_arc(rng, 0, n - 1, e);
    return Graph::from_edges(n, e);
}

Graph generate_subdivided_clique(int n) {
    if (n < 3) throw PreconditionError("subdivided clique needs at least 3 branch vertices");
    Edges e;
    int next = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            e.emplace_back(i, next);
            e.emplace_back(j, next);
            ++next;
        }
    return Graph::from_edges(next, e);
}

Graph generate_pentagon_chain(int faces) {
    if (faces < 1) throw PreconditionError("pentagon chain needs at least one face");
    // first pentagon on 0..4; each further face replaces the previous face's
    // middle edge with a fresh 3-vertex path, keeping that edge as a chord
    Edges e = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    int u = 2, v = 3; // edge the next pentagon hangs on
    int next = 5;
    for (int f = 1; f < faces; ++f) {
        int x = next++, y = next++, z = next++;
        e.emplace_back(u, x);
        e.emplace_back(x, y);
        e.emplace_back(y, z);
        e.emplace_back(z, v);
        u = x;
        v = y;
    }
    return Graph::from_edges(next, e);
}

GeneratedGraph generate_random_cluster_plus_modulator(const std::vector<int>& clique_sizes, int d,
                                                      uint64_t seed) {
    if (clique_sizes.empty()) throw PreconditionError("need at least one clique");
    for (int s : clique_sizes)
        if (s < 1) throw PreconditionError("clique sizes must be positive");
    if (d < 0) throw PreconditionError("modulator size must be nonnegative");
    if (d == 0 && clique_sizes.size() > 1)
        throw PreconditionError("several cliques with no modulator cannot be connected");
    std::mt19937_64 rng(seed);

    Edges e;
    std::vector<std::vector<int>> cliques;
    int next = 0;
    for (int s : clique_sizes) {
        std::vector<int> k;
        for (int i = 0; i < s; ++i) k.push_back(next++);
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j) e.emplace_back(k[i], k[j]);
        cliques.push_back(std::move(k));
    }
    std::vector<int> mod;
    for (int j = 0; j < d; ++j) mod.push_back(next++);

    if (d > 0) {
        // every clique reaches the modulator, every modulator vertex is used
        for (const auto& k : cliques) {
            int x = mod[uniform_int(rng, 0, d - 1)];
            e.emplace_back(x, k[uniform_int(rng, 0, (int)k.size() - 1)]);
        }
        for (int x : mod) {
            const auto& k = cliques[uniform_int(rng, 0, (int)cliques.size() - 1)];
            e.emplace_back(x, k[uniform_int(rng, 0, (int)k.size() - 1)]);
        }
        for (int x : mod)
            for (const auto& k : cliques)
                for (int v : k)
                    if (coin(rng, 0.15)) e.emplace_back(x, v);
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (coin(rng, 0.3)) e.emplace_back(mod[a], mod[b]);
        // modulator may still fall apart from the cliques' side: chain it
        for (int a = 0; a + 1 < d; ++a)
            if (coin(rng, 0.2)) e.emplace_back(mod[a], mod[a + 1]);
    }

    GeneratedGraph out;
    out.g = Graph::from_edges(next, e);
    out.modulator = mod;
    if (!is_connected(out.g)) {
        // deterministic repair: tie every piece that misses the first
        // modulator vertex to it
        auto comps = connected_components(out.g);
        for (const auto& comp : comps)
            if (std::find(comp.begin(), comp.end(), mod[0]) == comp.end())
                e.emplace_back(mod[0], comp.front());
        out.g = Graph::from_edges(next, e);
    }
    return out;
}

GeneratedGraph generate_random_bounded_nd(int num_classes, int max_class_size, uint64_t seed) {
    if (num_classes < 1) throw PreconditionError("need at least one class");
    if (max_class_size < 1) throw PreconditionError("class size bound must be positive");
    std::mt19937_64 rng(seed);
    int t = num_classes;

    if (t == 1) {
        // a lone class is only connected as a clique
        int s = std::max(2, uniform_int(rng, 2, std::max(2, max_class_size)));
        Edges e;
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j) e.emplace_back(i, j);
        GeneratedGraph out;
        out.g = Graph::from_edges(s, e);
        out.planted_classes.push_back({});
        for (int i = 0; i < s; ++i) out.planted_classes[0].push_back(i);
        return out;
    }

    // connected type graph: random tree plus extra edges
    std::vector<std::pair<int, int>> hedges;
    for (int i = 1; i < t; ++i) hedges.emplace_back(i, uniform_int(rng, 0, i - 1));
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if (coin(rng, 0.25)) hedges.emplace_back(i, j);
    Graph h = Graph::from_edges(t, hedges);

    std::vector<int> size(t), clique(t);
    int next = 0;
    std::vector<std::vector<int>> classes(t);
    for (int i = 0; i < t; ++i) {
        size[i] = uniform_int(rng, 1, max_class_size);
        clique[i] = coin(rng, 0.5) ? 1 : 0;
        for (int s = 0; s < size[i]; ++s) classes[i].push_back(next++);
    }
    Edges e;
    for (int i = 0; i < t; ++i)
        if (clique[i])
            for (int a = 0; a < size[i]; ++a)
                for (int b = a + 1; b < size[i]; ++b) e.emplace_back(classes[i][a], classes[i][b]);
    for (auto [i, j] : h.edges())
        for (int a : classes[i])
            for (int b : classes[j]) e.emplace_back(a, b);

    GeneratedGraph out;
    out.g = Graph::from_edges(next, e);
    out.planted_classes = std::move(classes);
    return out;
}

} // namespace cfon
