#pragma once
#include "cfon/coloring.hpp"
#include "cfon/graph.hpp"

namespace cfon {

struct ExactResult {
    int k = 0; // optimum number of colors
    Coloring coloring;
};

// cap = 0 resolves to CFON_ORACLE_CAP from the environment, else 12; graphs
// above the cap raise CapError. Exhaustive search, deterministic: vertices by
// descending degree (ties by id), colors tried ascending with a first-use
// symmetry cut, constraints checked as soon as a neighborhood is fully decided.
ExactResult exact_chi_on(const Graph& g, int cap = 0);
ExactResult exact_chi_cn(const Graph& g, int cap = 0);
// partial variant: vertices may stay unassigned, tried after real colors
ExactResult exact_chi_on_partial(const Graph& g, int cap = 0);

int effective_oracle_cap(int requested = 0);

} // namespace cfon
