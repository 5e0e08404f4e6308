#include "cfon/graph.hpp"
#include "cfon/errors.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace cfon {

bool Graph::has_edge(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

int Graph::edge_count() const {
    long s = 0;
    for (const auto& a : adj) s += (long)a.size();
    return (int)(s / 2);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw ParseError("negative vertex count");
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("edge endpoint out of range: " + std::to_string(u + 1) + " " +
                             std::to_string(v + 1));
        if (u == v)
            throw ParseError("self-loop at vertex " + std::to_string(u + 1));
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return g;
}

Graph Graph::induced(const std::vector<int>& verts) const {
    std::vector<int> local(n, -1);
    for (int i = 0; i < (int)verts.size(); ++i) local[verts[i]] = i;
    Graph h((int)verts.size());
    for (int i = 0; i < (int)verts.size(); ++i)
        for (int w : adj[verts[i]])
            if (local[w] >= 0) h.adj[i].push_back(local[w]);
    // adj of the host graph is sorted and local preserves order on sorted verts
    return h;
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int header_n = 0;
    int max_label = 0;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue; // blank
        auto bad = [&](const std::string& why) {
            throw ParseError("line " + std::to_string(lineno) + ": " + why);
        };
        if (tok == "c") continue;
        long u, v;
        if (tok == "p") {
            std::string kind;
            long n, m;
            if (!(ls >> kind >> n >> m) || kind != "edge" || n < 0)
                bad("malformed problem line");
            header_n = (int)n;
            continue;
        }
        if (tok == "e") {
            if (!(ls >> u >> v)) bad("malformed edge line");
        } else {
            try {
                u = std::stol(tok);
            } catch (...) {
                bad("unexpected token '" + tok + "'");
                return {}; // unreachable
            }
            if (!(ls >> v)) bad("edge line needs two endpoints");
        }
        std::string extra;
        if (ls >> extra) bad("trailing token '" + extra + "'");
        if (u < 1 || v < 1) bad("labels are 1-based");
        if (u == v) bad("self-loop at vertex " + std::to_string(u));
        max_label = std::max(max_label, (int)std::max(u, v));
        edges.emplace_back((int)u - 1, (int)v - 1);
    }
    int n = std::max(header_n, max_label);
    return Graph::from_edges(n, edges);
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

std::vector<int> bfs_distances(const Graph& g, int src) {
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

int bfs_distance(const Graph& g, int u, int v) { return bfs_distances(g, u)[v]; }

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int w : g.adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    return (int)connected_components(g).size() == 1;
}

std::vector<int> isolated_vertices(const Graph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (g.adj[v].empty()) out.push_back(v);
    return out;
}

void require_connected_no_isolated(const Graph& g) {
    if (g.n < 2) throw PreconditionError("graph needs at least 2 vertices");
    auto iso = isolated_vertices(g);
    if (!iso.empty())
        throw PreconditionError("isolated vertex " + std::to_string(iso[0] + 1) +
                                " admits no open-neighborhood coloring");
    if (!is_connected(g)) throw PreconditionError("graph is not connected");
}

} // namespace cfon
