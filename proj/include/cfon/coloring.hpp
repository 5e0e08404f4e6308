#pragma once
#include <string>
#include <vector>

#include "cfon/graph.hpp"

namespace cfon {

// Vertex coloring; color[v] == 0 means unassigned. witness[v], when present,
// is the color that is supposed to appear exactly once in N(v).
struct Coloring {
    std::vector<int> color;
    std::vector<int> witness; // empty or size n; 0 = none recorded

    Coloring() = default;
    explicit Coloring(int n) : color(n, 0) {}

    bool total() const;
    int colors_used() const; // distinct assigned colors
    int max_color() const;
};

// "v c" per vertex, "v -" for unassigned; 1-based
std::string serialize_coloring(const Coloring& c);
Coloring parse_coloring(const std::string& text, int n);

// "v u" per vertex with a recorded witness color
std::string serialize_witness(const Coloring& c);

} // namespace cfon
