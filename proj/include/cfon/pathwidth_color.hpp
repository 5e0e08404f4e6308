#pragma once
#include <utility>
#include <vector>

#include "cfon/coloring.hpp"
#include "cfon/decomposition.hpp"
#include "cfon/graph.hpp"

namespace cfon {

// colors that appear in a bag as unique-neighbor colors but not as vertex
// colors, split by how many bag vertices carry them as U
struct FreeColorPartition {
    std::vector<int> f1;   // exactly one carrier
    std::vector<int> fgt1; // two or more carriers
};

struct SweepState {
    std::vector<int> color;  // C, 0 = unset
    std::vector<int> unique; // U, 0 = unset
};

FreeColorPartition free_colors(const std::vector<int>& bag, const SweepState& st);

// color a vertex introduced next to at least one already-colored neighbor
void assign_intro_one(const Graph& g, int v, const std::vector<int>& prev_bag, SweepState& st);

// color a mutually-lone introduced pair; their U values point at each other
void assign_intro_special(const Graph& g, int v, int vhat, const std::vector<int>& prev_bag,
                          SweepState& st);

// largest subset whose C and U values are all pairwise distinct
int max_expensive_subset(const std::vector<std::pair<int, int>>& cu);

struct SweepAudit {
    int max_bag = 0;           // largest bag seen
    int max_expensive = 0;     // largest expensive subset over all bags
    int declared_bound = 0;    // floor(5(w+1)/3)
    bool technical_holds = false; // some bag has size >= ceil(3k/2)
};

Coloring color_by_pathwidth(const Graph& g, const SemiNicePathDecomposition& snd,
                            SweepAudit* audit = nullptr);

} // namespace cfon
