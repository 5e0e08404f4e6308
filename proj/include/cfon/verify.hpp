#pragma once
#include <string>
#include <utility>
#include <vector>

#include "cfon/coloring.hpp"
#include "cfon/graph.hpp"

namespace cfon {

struct Verdict {
    bool valid = false;
    std::vector<std::pair<int, std::string>> violations; // (vertex, reason)
    int colors_used = 0;
    // on success: for each v the smallest qualifying witness color
    std::vector<int> witness;
};

// every vertex needs a color appearing exactly once in N(v); coloring must be
// total (throws PreconditionError otherwise)
Verdict verify_cfon(const Graph& g, const Coloring& c);

// closed variant: N[v]
Verdict verify_cfcn(const Graph& g, const Coloring& c);

// partial variant: unassigned vertices contribute nothing, but every vertex
// still needs an assigned color appearing exactly once in N(v)
Verdict verify_partial_cfon(const Graph& g, const Coloring& c);

// checks a claimed witness map: u[v] != 0 must appear exactly once in N(v)
Verdict verify_witness(const Graph& g, const Coloring& c, const std::vector<int>& u);

} // namespace cfon
