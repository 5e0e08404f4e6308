#pragma once
#include <optional>
#include <vector>

#include "cfon/graph.hpp"

namespace cfon {

// smallest vertex set whose removal leaves the graph acyclic; nullopt when the
// minimum exceeds k_max (k_max < 0 means unbounded)
std::optional<std::vector<int>> compute_fvs_exact(const Graph& g, int k_max = -1);

// smallest vertex set whose removal leaves a disjoint union of cliques
std::optional<std::vector<int>> compute_cluster_modulator_exact(const Graph& g, int d_max = -1);

bool is_acyclic_without(const Graph& g, const std::vector<int>& removed);
bool is_cluster_without(const Graph& g, const std::vector<int>& removed);

// partition into twin classes (N(v) \ {w} == N(w) \ {v}) plus the quotient
struct TypePartition {
    std::vector<std::vector<int>> classes; // each sorted; ordered by lowest member
    std::vector<int> class_of;
    std::vector<char> is_clique; // meaningful for classes of size >= 2
    Graph h;                     // one vertex per class; edge iff fully joined
    int cl = 0;                  // non-singleton clique classes
    int ind = 0;                 // non-singleton independent classes
};

TypePartition compute_type_partition(const Graph& g);

} // namespace cfon
