#pragma once
#include <map>
#include <vector>

#include "cfon/coloring.hpp"
#include "cfon/graph.hpp"

namespace cfon {

// split of the vertex set driven by a maximal distance-3 set: v0 is the set
// itself, v1 its neighborhood, v2 the rest; f sends every v0/v2 vertex to a
// chosen v1 neighbor
struct Distance3Partition {
    std::vector<int> v0, v1, v2; // sorted, disjoint, covering V(G)
    std::map<int, int> f;        // v in v0 ∪ v2 -> neighbor in v1
};

// greedy from `start`: pairwise distances >= 3, every member at distance
// exactly 3 from another member (when two or more exist), every non-member
// within distance < 3 of some member; candidates rescanned ascending to a
// fixpoint
std::vector<int> maximal_distance3_set(const Graph& g, int start);

Distance3Partition make_distance3_partition(const Graph& g, int start);
void validate_distance3_partition(const Graph& g, const Distance3Partition& p);

// minor of g on v1: edges inside v2 dropped, every v0/v2 vertex contracted
// into f(v); vertex i of the result is p.v1[i]
Graph build_contracted_graph(const Graph& g, const Distance3Partition& p);

enum class ProperStatus { Success, Impossible, BudgetExhausted };

struct ProperColoring {
    ProperStatus status = ProperStatus::Impossible;
    std::vector<int> color; // over 1..k when status == Success
    long long nodes = 0;    // search nodes spent
};

// exact backtracking, saturation-first vertex order, under a node budget;
// failure is explicit and never a wrong answer
ProperColoring proper_coloring(const Graph& g, int k, long long node_budget = 10'000'000);

// classical minimum-degree reduction with two-color chain swaps; throws
// PreconditionError when it gets stuck (which signals a non-planar input)
std::vector<int> proper_color_planar5(const Graph& g);

struct PlanarPartialResult {
    Coloring result; // partial: v2 stays uncolored
    Distance3Partition partition;
    Graph contracted;           // the minor that received the proper coloring
    bool fallback_used = false; // the chain-swap path had to replace the exact search
    int bound = 0;              // color budget the result is checked against
};

// v0 colored 1, v1 colored by a proper coloring of the contracted minor over
// {2..5} (exact) or {2..6} (fallback), v2 left uncolored
PlanarPartialResult partial_cfon_planar(const Graph& g);

// same pipeline with a three-color proper coloring, total budget 4; refuses
// inputs whose contracted minor needs a fourth color
PlanarPartialResult partial_cfon_outerplanar(const Graph& g);

} // namespace cfon
