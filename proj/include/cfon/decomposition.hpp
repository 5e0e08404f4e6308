#pragma once
#include <string>
#include <vector>

#include "cfon/graph.hpp"

namespace cfon {

struct PathDecomposition {
    std::vector<std::vector<int>> bags; // each sorted ascending
    int width() const;
};

struct PdVerdict {
    bool valid = false;
    std::vector<std::string> violations;
    int width = -1;
};

// checks the three axioms: vertex coverage, edge coverage, contiguity
PdVerdict validate_path_decomposition(const Graph& g, const PathDecomposition& pd);

// empty end bags, consecutive bags differ by one introduce or one forget,
// exactly 2n+1 bags; width preserved
PathDecomposition make_nice(const Graph& g, const PathDecomposition& pd);

enum class SnKind { Empty, Introduce, Forget, Special };

struct SnBag {
    std::vector<int> bag; // sorted
    SnKind kind = SnKind::Empty;
    int v = -1;    // introduced or forgotten vertex
    int vhat = -1; // partner in a special bag
};

struct SemiNicePathDecomposition {
    std::vector<SnBag> bags;
    int width() const;
};

// repairs every introduce bag that lacks a neighbor of its vertex, either by
// delaying the vertex to the first bag holding one of its neighbors or by
// fusing the two introductions into a special bag; width never grows
SemiNicePathDecomposition make_semi_nice(const Graph& g, const PathDecomposition& nice);

// checks SN invariants on top of the underlying pd axioms
PdVerdict validate_semi_nice(const Graph& g, const SemiNicePathDecomposition& snd);

// minimum-width decomposition via exhaustive vertex-ordering search
PathDecomposition pathwidth_exact_small(const Graph& g, int n_cap = 12);

// text format: "c" comments, "s pd <bags> <max_bag_size> <n>", then
// "b <index> v1 v2 ..."; semi-nice bags carry a tag token after the index
PathDecomposition parse_path_decomposition(const std::string& text);
std::string serialize_path_decomposition(const PathDecomposition& pd);
SemiNicePathDecomposition parse_semi_nice(const std::string& text);
std::string serialize_semi_nice(const SemiNicePathDecomposition& snd);

} // namespace cfon
