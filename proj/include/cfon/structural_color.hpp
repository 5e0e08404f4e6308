#pragma once
#include <string>
#include <vector>

#include "cfon/certificates.hpp"
#include "cfon/coloring.hpp"
#include "cfon/graph.hpp"

namespace cfon {

// a twin class that had to be repaired, and the rule that repaired it
struct BadSetFix {
    int cls = -1;
    std::string rule;
};

// coloring of G obtained by coloring the quotient graph exactly and lifting
struct LiftedColoring {
    Coloring result;                 // final coloring of G, witness filled
    Coloring h_base;                 // exact coloring of the quotient graph
    std::vector<int> representative; // one vertex per class
    std::vector<BadSetFix> bad_log;  // every bad class exactly once
    int bound = 0;                   // color budget the run is checked against
};

// open variant: quotient colored by the exact oracle, representatives keep
// their class color, bad clique classes repaired with at most ceil(cl/2)+1
// extra colors
LiftedColoring cfon_by_nd(const Graph& g);

// closed variant: bad independent classes repaired in iterations of three
LiftedColoring cfcn_by_nd(const Graph& g);

// open variant on a cluster modulator x: at most |x|+3 colors
Coloring cfon_by_dc(const Graph& g, const std::vector<int>& x);

// closed variant: at most max(3, |x|+1) colors
Coloring cfcn_by_dc(const Graph& g, const std::vector<int>& x);

} // namespace cfon
