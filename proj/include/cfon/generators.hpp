#pragma once
#include <cstdint>
#include <vector>

#include "cfon/graph.hpp"

namespace cfon {

Graph generate_path(int n);  // n >= 2
Graph generate_cycle(int n); // n >= 3
Graph generate_star(int n);  // n >= 2 vertices total, center is vertex 1

Graph generate_random_tree(int n, uint64_t seed); // n >= 2

// fan triangulation of a polygon chosen recursively; n >= 3
Graph generate_random_maximal_outerplanar(int n, uint64_t seed);

// clique on n vertices with every edge subdivided once; n >= 3. Original
// vertices come first (1..n), subdivision vertices follow in pair order.
Graph generate_subdivided_clique(int n);

// connected graph with an edge glued onto pentagon faces in a strip; every
// inner face is a 5-cycle. faces >= 1, vertex count = 2 + 3 * faces.
Graph generate_pentagon_chain(int faces);

struct GeneratedGraph {
    Graph g;
    std::vector<int> modulator;                    // cluster-plus-modulator family
    std::vector<std::vector<int>> planted_classes; // bounded type-count family
};

// disjoint cliques of the given sizes plus d extra vertices wired to them;
// deleting the extras leaves a cluster graph
GeneratedGraph generate_random_cluster_plus_modulator(const std::vector<int>& clique_sizes, int d,
                                                      uint64_t seed);

// graph whose vertices fall into at most num_classes twin classes
GeneratedGraph generate_random_bounded_nd(int num_classes, int max_class_size, uint64_t seed);

} // namespace cfon
