#pragma once
#include <string>
#include <utility>
#include <vector>

namespace cfon {

// Undirected simple graph. Vertices are 0-based internally; all text formats
// and error messages use 1-based labels.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj; // sorted ascending

    Graph() = default;
    explicit Graph(int n_) : n(n_), adj(n_) {}

    int degree(int v) const { return (int)adj[v].size(); }
    bool has_edge(int u, int v) const;
    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const; // u < v, lexicographic

    // builds from an edge list; rejects self-loops, dedups parallel edges
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    // induced subgraph on verts (must be sorted); local index i <-> verts[i]
    Graph induced(const std::vector<int>& verts) const;
};

// Accepts plain "u v" lines, DIMACS "e u v" lines, "c" comments and an
// optional "p edge n m" header. Labels are 1-based.
Graph parse_edge_list(const std::string& text);

// plain sorted "u v" lines, 1-based
std::string serialize_edge_list(const Graph& g);

std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
std::vector<int> isolated_vertices(const Graph& g);

// single-source BFS distances; -1 where unreachable
std::vector<int> bfs_distances(const Graph& g, int src);
int bfs_distance(const Graph& g, int u, int v);

// common precondition of the coloring entry points
void require_connected_no_isolated(const Graph& g);

} // namespace cfon
