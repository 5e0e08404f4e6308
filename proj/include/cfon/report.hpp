#pragma once
#include <string>
#include <utility>
#include <vector>

#include "cfon/coloring.hpp"
#include "cfon/decomposition.hpp"
#include "cfon/graph.hpp"

namespace cfon {

enum class Method { Pathwidth, Fvs, Nd, Dc, PlanarPartial, OuterplanarPartial, Outerplanar, Auto };

// flag spelling <-> enum; unknown names raise ParseError
Method parse_method(const std::string& name);
std::string method_name(Method m);

struct ColoringReport {
    std::string method; // resolved method name, never "auto"
    int n = 0;
    int m = 0;
    std::vector<std::pair<std::string, std::string>> params; // method-specific key/value lines
    int declared_bound = 0;
    int colors_used = 0;
    bool partial = false;       // some vertices may legitimately stay uncolored
    bool fallback_used = false; // the five-coloring path replaced the exact search
    bool valid = false;         // verifier verdict recomputed at emit time
    Coloring coloring;          // witness map recorded by every construction
    std::vector<std::string> audit; // structural audit lines
    long long time_ms = 0;
};

struct RunOptions {
    Method method = Method::Auto;
    // externally supplied structures; validated before use
    const SemiNicePathDecomposition* decomposition = nullptr; // pathwidth
    const std::vector<int>* certificate = nullptr;            // fvs / dc vertex set
};

// dispatches to the chosen construction (resolving "auto" first), re-verifies
// the result, and fills the report; the validity flag always comes from the
// verifier run at emit time
ColoringReport run_color(const Graph& g, const RunOptions& opt = {});

// the automatic method chain: outerplanar when every block has an outer
// cycle, else fvs when the exact feedback vertex set has size <= 8, else dc
// when the exact cluster modulator has size <= 8, else pathwidth when the
// exact decomposition search is in reach (n <= 12), else planar-partial
Method resolve_auto(const Graph& g);

// line-oriented report document; identical runs agree byte-for-byte on every
// line except "time_ms"
std::string format_report(const ColoringReport& r);

// whitespace-separated 1-based vertex labels, "c" comment lines allowed;
// result sorted, duplicates and out-of-range labels rejected
std::vector<int> parse_vertex_set(const std::string& text, int n);

} // namespace cfon
