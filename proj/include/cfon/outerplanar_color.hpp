#pragma once
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cfon/coloring.hpp"
#include "cfon/graph.hpp"

namespace cfon {

// Conflict-free coloring of connected outerplanar graphs with at most four
// colors. The construction decomposes the graph into biconnected blocks,
// recovers each block's unique outer (Hamiltonian) cycle, splits the interior
// into faces along the non-crossing chords, and colors face by face along the
// weak dual tree. Throughout, every colored vertex v carries a companion value
// u[v]: the color that appears exactly once in N(v) (its "witness color").

// ---------------------------------------------------------------------------
// block structure
// ---------------------------------------------------------------------------

struct BlockTree {
    std::vector<std::vector<int>> blocks; // sorted vertex lists, lexicographic order
    std::vector<int> cut_vertices;        // sorted; vertices in >= 2 blocks
    std::vector<std::vector<int>> adj;    // block indices sharing a cut vertex
};

// biconnected components of a connected graph; bridges appear as 2-vertex
// blocks, and a lone vertex yields one singleton block
BlockTree block_decomposition(const Graph& g);

// ---------------------------------------------------------------------------
// outer cycle of a 2-connected outerplanar block
// ---------------------------------------------------------------------------

struct OuterCycle {
    std::vector<int> cycle;                  // Hamiltonian order, canonical rotation
    std::vector<std::pair<int, int>> chords; // normalized (min,max), sorted
};

// Recovers the outer cycle by repeatedly shortcutting the lowest-id degree-2
// vertex (recording a virtual edge between its neighbors) down to a triangle,
// then re-expanding in reverse. Rejects graphs that are not 2-connected
// outerplanar (edge bound m <= 2n-3, shortcut stalls, failed re-insertion,
// crossing chords are all reported as precondition failures).
OuterCycle outer_cycle(const Graph& block);

// ---------------------------------------------------------------------------
// faces, weak dual tree, ear order
// ---------------------------------------------------------------------------

// Face 0 is the region touching the closing edge of the canonical outer
// cycle; deeper regions follow in breadth-first order with children visited by
// ascending cycle position. ear_order lists every face except f0 in BFS order
// over the weak dual tree rooted at f0, so each face's base edge (the chord
// shared with its parent) is fully colored before the face is processed.
struct EarDecomposition {
    std::vector<std::vector<int>> faces; // bounding cycles (walk order)
    int f0 = 0;
    std::vector<int> ear_order;               // face indices, excludes f0
    std::vector<int> parent;                  // dual parent under the BFS; -1 at f0
    std::vector<std::pair<int, int>> base;    // per face: edge shared with parent
    std::map<std::pair<int, int>, std::vector<int>> edge_faces; // faces containing edge
    std::map<int, int> block_degree;          // degree within the block
    std::vector<char> colored;                // set as faces are processed/consumed
};

EarDecomposition ear_decomposition(const Graph& block, const OuterCycle& oc, int f0);

// renumber an ear decomposition computed on an induced block into the vertex
// ids of the containing graph (to_global = the block's sorted vertex list)
EarDecomposition relabel_ears(const EarDecomposition& ed, const std::vector<int>& to_global);

// ---------------------------------------------------------------------------
// coloring state
// ---------------------------------------------------------------------------

// Partial coloring with witness colors. An edge lands in `exempt` when the
// construction knowingly leaves it outside the edge rule below; every exempt
// edge borders no uncolored face of its block by the time the block completes.
struct CUState {
    std::vector<int> c, u; // 0 = unassigned
    std::set<std::pair<int, int>> exempt;
    CUState() = default;
    explicit CUState(int n) : c(n, 0), u(n, 0) {}
};

// Asserts the running invariants (InternalError on failure):
//  - every colored v has u[v] in 1..4, c[v] != u[v], and exactly one colored
//    neighbor of color u[v];
//  - every fully colored non-exempt edge {v,w} has c[v] != c[w] and
//    |{c[v],u[v],c[w],u[w]}| == 3.
void audit_state(const Graph& g, const CUState& st);

// Colors an entirely uncolored face of size != 5 with the repeating pattern
// 1,2,3 (patched at the end depending on |face| mod 3); witnesses follow the
// cyclic successor. The face is rotated canonically first.
void color_face_fresh(const Graph& g, const std::vector<int>& face, CUState& st);

// Colors a face whose only colored vertex is v, preserving v's witness color;
// works for every face size >= 3 (pentagons included).
void color_face_one_precolored(const Graph& g, const std::vector<int>& face, int v, CUState& st);

// Colors a face of size >= 4 whose only colored vertices are the adjacent
// endpoints of `edge`, which carry the same color but different witness
// colors. The edge itself stays exempt; all new edges satisfy the edge rule.
void color_face_cucv_same(const Graph& g, const std::vector<int>& face, std::pair<int, int> edge,
                          CUState& st);

// Colors one ear face (its base edge colored, interior fresh), dispatching on
// the endpoint configuration and, for short ears, on how the new edges sit in
// neighboring faces. May eagerly color adjacent faces (marking them in
// ed.colored). Appends one tag per action to *log when log != nullptr.
void color_ear_path(const Graph& g, EarDecomposition& ed, int face_idx, CUState& st,
                    std::vector<std::string>* log = nullptr);

// Three-color procedure for a block all of whose faces are pentagons. The
// edge rule is suspended for the whole block (every block edge becomes
// exempt); valid because the block is finished in one sweep.
void color_all_5_faces_block(const Graph& g, EarDecomposition& ed, CUState& st,
                             std::vector<std::string>* log = nullptr);

// ---------------------------------------------------------------------------
// driver
// ---------------------------------------------------------------------------

struct OuterplanarRun {
    Coloring result; // total; witness filled from u
    CUState state;
    std::vector<std::string> log; // one tag per face/ear/bridge action
    int blocks = 0;
    bool three_color_block = false; // whole graph = one all-pentagon block
};

// Conflict-free-colors a connected outerplanar graph (no isolated vertices)
// with at most 4 colors; a single all-pentagon block gets at most 3. Blocks
// are processed breadth-first from the block containing vertex 0; each later
// block starts from its already-colored cut vertex. The result is checked
// internally before it is returned.
OuterplanarRun color_outerplanar_run(const Graph& g);
Coloring color_outerplanar(const Graph& g);

} // namespace cfon
