#pragma once
#include <vector>

#include "cfon/coloring.hpp"
#include "cfon/graph.hpp"

namespace cfon {

// rooted spanning structure of the forest left after deleting a vertex set
struct RootedForest {
    std::vector<int> tree_id; // -1 for deleted vertices
    std::vector<int> parent;  // -1 for roots and deleted vertices
    std::vector<int> depth;   // -1 for deleted vertices
    std::vector<std::vector<int>> trees; // sorted members, ordered by lowest member
    std::vector<int> root;               // lowest member
    std::vector<int> special;            // lowest neighbor of the root; -1 for singletons
};

RootedForest build_rooted_forest(const Graph& g, const std::vector<int>& removed);

// re-root one tree and recompute its parent/depth/special entries
void reroot_tree(const Graph& g, RootedForest& rf, int t, int new_root);

// two-color one tree of the forest: root gets ca, the special vertex cb, other
// root neighbors ca, everyone else the color its grandparent does not have;
// witnesses are the parent (the special vertex for the root)
Coloring color_tree(const Graph& g, const RootedForest& rf, int t, int ca, int cb);

// neighbor of v inside tree t of maximum depth; ties avoid the special vertex,
// then take the lowest id
int deepest_neighbor(const Graph& g, const RootedForest& rf, int t, int v);

// three colors when a single vertex breaks all cycles
Coloring color_fvs1(const Graph& g, int f);

// at most |f|+2 colors given a feedback vertex set f
Coloring color_by_fvs(const Graph& g, std::vector<int> f);

} // namespace cfon
