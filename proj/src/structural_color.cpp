#include "cfon/structural_color.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cfon/errors.hpp"
#include "cfon/exact.hpp"
#include "cfon/verify.hpp"

namespace cfon {

namespace {

// the color claimed for v must appear exactly once among N[v]
void check_closed_witness(const Graph& g, const Coloring& c) {
    for (int v = 0; v < g.n; ++v) {
        int want = c.witness[v];
        check_internal(want != 0, "vertex " + std::to_string(v + 1) + " lacks a closed witness");
        int hits = (c.color[v] == want) ? 1 : 0;
        for (int y : g.adj[v]) hits += (c.color[y] == want) ? 1 : 0;
        check_internal(hits == 1, "closed witness color of vertex " + std::to_string(v + 1) +
                                      " is not unique");
    }
}

// direct coloring of a complete graph, open variant
Coloring clique_cfon(const Graph& g) {
    check_internal(g.edge_count() == g.n * (g.n - 1) / 2, "expected a complete graph");
    Coloring out(g.n);
    for (int v = 0; v < g.n; ++v) out.color[v] = std::min(v + 1, 3);
    Verdict vd = verify_cfon(g, out);
    check_internal(vd.valid, "clique coloring failed verification");
    out.witness = vd.witness;
    return out;
}

std::vector<int> class_reps(const TypePartition& tp) {
    std::vector<int> reps(tp.h.n);
    for (int i = 0; i < tp.h.n; ++i) reps[i] = tp.classes[i].front();
    return reps;
}

void require_modulator(const Graph& g, std::vector<int>& x) {
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    for (int v : x)
        if (v < 0 || v >= g.n)
            throw PreconditionError("modulator vertex " + std::to_string(v + 1) +
                                    " out of range");
    if (!is_cluster_without(g, x))
        throw PreconditionError("removing the modulator must leave a disjoint union of cliques");
}

// connected components of G - X; each is a clique by precondition
std::vector<std::vector<int>> cliques_of(const Graph& g, const std::vector<int>& x) {
    std::vector<char> in_x(g.n, 0);
    for (int v : x) in_x[v] = 1;
    std::vector<char> seen(g.n, 0);
    std::vector<std::vector<int>> out;
    for (int v = 0; v < g.n; ++v) {
        if (in_x[v] || seen[v]) continue;
        std::vector<int> comp{v}, stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int y : g.adj[u])
                if (!in_x[y] && !seen[y]) {
                    seen[y] = 1;
                    comp.push_back(y);
                    stack.push_back(y);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
    return out;
}

} // namespace

LiftedColoring cfon_by_nd(const Graph& g) {
    require_connected_no_isolated(g);
    TypePartition tp = compute_type_partition(g);
    int t = tp.h.n;
    LiftedColoring out;
    out.representative = class_reps(tp);

    if (t == 1) {
        // one twin class spanning a connected graph is a clique; the quotient
        // is a single vertex with an empty open neighborhood, so color directly
        out.result = clique_cfon(g);
        out.bound = 3;
        check_internal(out.result.colors_used() <= out.bound, "clique coloring over budget");
        return out;
    }

    ExactResult ex = exact_chi_on(tp.h);
    int chi = ex.k;
    Coloring hb = ex.coloring;
    hb.witness = verify_cfon(tp.h, hb).witness;
    out.h_base = hb;

    int cl_half = (tp.cl + 1) / 2;
    int s = chi + cl_half;
    out.bound = chi + cl_half + 2;

    // carrier[i]: the neighbor class whose color is unique in N_H(i)
    std::vector<int> carrier(t, -1);
    for (int i = 0; i < t; ++i) {
        for (int j : tp.h.adj[i])
            if (hb.color[j] == hb.witness[i]) {
                carrier[i] = j;
                break;
            }
        check_internal(carrier[i] >= 0, "quotient witness carrier missing");
    }

    std::vector<int> color(g.n, 0);
    std::vector<int> wv(g.n, -1);
    for (int i = 0; i < t; ++i) {
        int r = out.representative[i];
        color[r] = hb.color[i];
        int cw = out.representative[carrier[i]];
        for (int x : tp.classes[i]) wv[x] = cw;
    }

    // bad: non-singleton clique classes whose quotient witness is their own color
    std::vector<char> bad(t, 0);
    for (int i = 0; i < t; ++i)
        if ((int)tp.classes[i].size() >= 2 && tp.is_clique[i] && hb.color[i] == hb.witness[i])
            bad[i] = 1;

    // while some class touches two or more bad classes, hand its representative
    // a globally fresh color; it then serves all of them
    int next_extra = chi + 1;
    for (;;) {
        int target = -1;
        for (int i = 0; i < t && target < 0; ++i) {
            int cnt = 0;
            for (int j : tp.h.adj[i]) cnt += bad[j] ? 1 : 0;
            if (cnt >= 2) target = i;
        }
        if (target < 0) break;
        check_internal(next_extra <= chi + cl_half, "bad-set reduction ran out of colors");
        int r = out.representative[target];
        color[r] = next_extra++;
        if ((int)tp.classes[target].size() >= 2 && tp.is_clique[target])
            for (int x : tp.classes[target])
                if (x != r) wv[x] = r;
        for (int j : tp.h.adj[target]) {
            if (!bad[j]) continue;
            for (int x : tp.classes[j]) wv[x] = r;
            bad[j] = 0;
            out.bad_log.push_back({j, "reduction"});
        }
        if (bad[target]) {
            bad[target] = 0;
            out.bad_log.push_back({target, "reduction-target"});
        }
    }

    // leftovers are adjacent to at most one bad class each
    for (int i = 0; i < t; ++i) {
        if (!bad[i]) continue;
        int r_i = out.representative[i];
        int partner = -1;
        for (int j : tp.h.adj[i])
            if (bad[j]) {
                partner = j;
                break;
            }
        if (partner >= 0) {
            color[r_i] = s + 1;
            for (int x : tp.classes[i])
                if (x != r_i) wv[x] = r_i;
            for (int x : tp.classes[partner]) wv[x] = r_i;
            bad[i] = 0;
            bad[partner] = 0;
            out.bad_log.push_back({i, "pair"});
            out.bad_log.push_back({partner, "pair-partner"});
        } else {
            // the quotient carrier of this class's color keeps it unique
            int rj = out.representative[carrier[i]];
            color[r_i] = s + 1;
            for (int x : tp.classes[i]) wv[x] = rj;
            bad[i] = 0;
            out.bad_log.push_back({i, "lone"});
        }
    }

    for (int v = 0; v < g.n; ++v)
        if (color[v] == 0) color[v] = s + 2;

    out.result = Coloring(g.n);
    out.result.color = color;
    out.result.witness.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        check_internal(wv[v] >= 0, "vertex left without a witness");
        out.result.witness[v] = color[wv[v]];
    }
    check_internal(verify_cfon(g, out.result).valid, "lifted coloring failed verification");
    check_internal(verify_witness(g, out.result, out.result.witness).valid,
                   "lifted witness map is wrong");
    check_internal(out.result.colors_used() <= out.bound, "lifted coloring over budget");
    return out;
}

LiftedColoring cfcn_by_nd(const Graph& g) {
    require_connected_no_isolated(g);
    TypePartition tp = compute_type_partition(g);
    int t = tp.h.n;
    LiftedColoring out;
    out.representative = class_reps(tp);

    ExactResult ex = exact_chi_cn(tp.h);
    int chi = ex.k;
    Coloring hb = ex.coloring;
    hb.witness = verify_cfcn(tp.h, hb).witness;
    out.h_base = hb;

    int ind_third = (tp.ind + 2) / 3;
    int s = chi + ind_third;
    out.bound = chi + ind_third + 3;

    // carrier[i] may be the class itself (closed neighborhoods)
    std::vector<int> carrier(t, -1);
    for (int i = 0; i < t; ++i) {
        if (hb.color[i] == hb.witness[i]) {
            carrier[i] = i;
        } else {
            for (int j : tp.h.adj[i])
                if (hb.color[j] == hb.witness[i]) {
                    carrier[i] = j;
                    break;
                }
        }
        check_internal(carrier[i] >= 0, "quotient witness carrier missing");
    }

    std::vector<int> color(g.n, 0);
    std::vector<int> wv(g.n, -1);
    std::vector<char> bad(t, 0);
    for (int i = 0; i < t; ++i) {
        int r = out.representative[i];
        color[r] = hb.color[i];
        int cw = out.representative[carrier[i]];
        wv[r] = cw;
        bool clique_like = (int)tp.classes[i].size() < 2 || tp.is_clique[i];
        if (!clique_like && hb.color[i] == hb.witness[i]) {
            bad[i] = 1; // independent class relying on its own color
            continue;
        }
        for (int x : tp.classes[i])
            if (x != r) wv[x] = cw;
    }

    // iterations: a bad class adjacent to two or more bad classes gets its own
    // two fresh colors and serves every bad neighbor through its lead vertex
    int ell = 0;
    for (;;) {
        int lead = -1;
        for (int i = 0; i < t && lead < 0; ++i) {
            if (!bad[i]) continue;
            int cnt = 0;
            for (int j : tp.h.adj[i]) cnt += bad[j] ? 1 : 0;
            if (cnt >= 2) lead = i;
        }
        if (lead < 0) break;
        ++ell;
        check_internal(ell <= ind_third, "lead iterations exceeded their budget");
        int r = out.representative[lead];
        int vlead = -1;
        for (int x : tp.classes[lead])
            if (x != r) {
                vlead = x;
                break;
            }
        check_internal(vlead >= 0, "bad class has no non-representative vertex");
        color[vlead] = chi + ell;
        for (int x : tp.classes[lead])
            if (x != r && x != vlead) color[x] = chi + ell + 1;
        for (int x : tp.classes[lead]) wv[x] = x;
        bad[lead] = 0;
        out.bad_log.push_back({lead, "lead"});
        for (int j : tp.h.adj[lead]) {
            if (!bad[j]) continue;
            for (int x : tp.classes[j])
                if (x != out.representative[j]) wv[x] = vlead;
            bad[j] = 0;
            out.bad_log.push_back({j, "lead-neighbor"});
        }
    }

    for (int i = 0; i < t; ++i) {
        if (!bad[i]) continue;
        int partner = -1;
        for (int j : tp.h.adj[i])
            if (bad[j]) {
                partner = j;
                break;
            }
        if (partner >= 0) {
            int xi = -1, xj = -1;
            for (int x : tp.classes[i])
                if (x != out.representative[i]) {
                    xi = x;
                    break;
                }
            for (int x : tp.classes[partner])
                if (x != out.representative[partner]) {
                    xj = x;
                    break;
                }
            color[xi] = s + 1;
            color[xj] = s + 2;
            for (int x : tp.classes[i])
                if (x != out.representative[i]) wv[x] = xj;
            for (int x : tp.classes[partner])
                if (x != out.representative[partner]) wv[x] = xi;
            bad[i] = 0;
            bad[partner] = 0;
            out.bad_log.push_back({i, "pair"});
            out.bad_log.push_back({partner, "pair-partner"});
        } else {
            for (int x : tp.classes[i]) {
                if (x != out.representative[i]) color[x] = s + 2;
                wv[x] = x;
            }
            bad[i] = 0;
            out.bad_log.push_back({i, "lone"});
        }
    }

    for (int v = 0; v < g.n; ++v)
        if (color[v] == 0) color[v] = s + 3;

    out.result = Coloring(g.n);
    out.result.color = color;
    out.result.witness.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        check_internal(wv[v] >= 0, "vertex left without a witness");
        out.result.witness[v] = color[wv[v]];
    }
    check_internal(verify_cfcn(g, out.result).valid,
                   "lifted closed coloring failed verification");
    check_closed_witness(g, out.result);
    check_internal(out.result.colors_used() <= out.bound, "lifted closed coloring over budget");
    return out;
}

Coloring cfon_by_dc(const Graph& g, const std::vector<int>& xin) {
    require_connected_no_isolated(g);
    std::vector<int> X = xin;
    require_modulator(g, X);
    int d = (int)X.size();
    if (d == 0) return clique_cfon(g); // connected cluster graph is one clique

    std::vector<int> xidx(g.n, 0); // 1-based position in X
    for (int i = 0; i < d; ++i) xidx[X[i]] = i + 1;
    std::vector<std::vector<int>> cliques = cliques_of(g, X);

    std::vector<int> color(g.n, 0);
    std::vector<int> wv(g.n, -1);
    std::set<int> reserved; // witness colors that must never be assigned again
    auto assign = [&](int v, int c) {
        check_internal(color[v] == 0, "recoloring vertex " + std::to_string(v + 1));
        check_internal(!reserved.count(c), "reserved color " + std::to_string(c) + " reused");
        color[v] = c;
    };

    // modulator vertices with modulator neighbors keep their own index; any
    // such neighbor's index is globally unique and serves as witness
    for (int v : X) {
        bool has_x_neighbor = false;
        int lowest = -1;
        for (int y : g.adj[v])
            if (xidx[y] != 0) {
                has_x_neighbor = true;
                if (lowest < 0) lowest = y;
            }
        if (has_x_neighbor) {
            assign(v, xidx[v]);
            wv[v] = lowest;
        }
    }

    // lone clique vertices: all their neighbors sit in the modulator
    for (const std::vector<int>& k : cliques) {
        if (k.size() != 1) continue;
        int w = k.front();
        std::vector<int> uncol;
        for (int y : g.adj[w])
            if (color[y] == 0) uncol.push_back(y);
        std::sort(uncol.begin(), uncol.end(),
                  [&](int a, int b) { return xidx[a] < xidx[b]; });
        if (!uncol.empty()) {
            // pair w with its first uncolored neighbor on that vertex's index;
            // the color is then retired
            int v1 = uncol.front();
            int c1 = xidx[v1];
            assign(v1, c1);
            assign(w, c1);
            reserved.insert(c1);
            wv[w] = v1;
            wv[v1] = w;
            for (size_t l = 1; l < uncol.size(); ++l) {
                assign(uncol[l], d + 1);
                wv[uncol[l]] = w;
            }
        } else {
            std::map<int, std::pair<int, int>> cnt; // color -> (count, lowest carrier)
            for (int y : g.adj[w]) {
                auto it = cnt.find(color[y]);
                if (it == cnt.end())
                    cnt[color[y]] = {1, y};
                else
                    ++it->second.first;
            }
            int uniq = 0, uc = -1;
            for (const auto& [c, pr] : cnt)
                if (pr.first == 1) {
                    uniq = c;
                    uc = pr.second;
                    break;
                }
            if (uniq != 0) {
                assign(w, d + 1);
                wv[w] = uc;
            } else {
                // every color repeats, which forces an all-d+1 neighborhood;
                // flip the lowest-index neighbor back to its own index
                for (const auto& [c, pr] : cnt)
                    check_internal(c == d + 1,
                                   "repeated color next to a lone clique vertex is not " +
                                       std::to_string(d + 1));
                int v1 = -1;
                for (int y : g.adj[w])
                    if (v1 < 0 || xidx[y] < xidx[v1]) v1 = y;
                color[v1] = xidx[v1];
                reserved.insert(xidx[v1]);
                assign(w, d + 1);
                wv[w] = v1;
            }
        }
    }

    // modulator vertices still uncolored and still without a unique neighbor
    // color get one injected into a neighboring clique
    for (int v : X) {
        if (color[v] != 0) continue;
        std::map<int, std::pair<int, int>> cnt;
        for (int y : g.adj[v]) {
            if (color[y] == 0) continue;
            auto it = cnt.find(color[y]);
            if (it == cnt.end())
                cnt[color[y]] = {1, y};
            else
                ++it->second.first;
        }
        bool has_unique = false;
        for (const auto& [c, pr] : cnt)
            if (pr.first == 1) has_unique = true;
        if (has_unique) continue;
        int w = -1;
        for (int y : g.adj[v])
            if (color[y] == 0) {
                w = y;
                break;
            }
        check_internal(w >= 0, "no free neighbor to carry an injected witness color");
        assign(w, xidx[v]);
        reserved.insert(xidx[v]);
        wv[v] = w;
    }

    // whoever is left in the modulator already sees a unique color
    for (int v : X) {
        if (color[v] != 0) continue;
        assign(v, d + 1);
        std::map<int, std::pair<int, int>> cnt;
        for (int y : g.adj[v]) {
            if (color[y] == 0 || y == v) continue;
            auto it = cnt.find(color[y]);
            if (it == cnt.end())
                cnt[color[y]] = {1, y};
            else
                ++it->second.first;
        }
        for (const auto& [c, pr] : cnt)
            if (pr.first == 1) {
                wv[v] = pr.second;
                break;
            }
        check_internal(wv[v] >= 0, "modulator vertex lost its unique neighbor color");
    }

    // finish the cliques of size at least two
    for (const std::vector<int>& k : cliques) {
        if (k.size() < 2) continue;
        std::vector<int> colored;
        for (int v : k)
            if (color[v] != 0) colored.push_back(v);
        if (colored.size() >= 2) {
            for (int v : k)
                if (color[v] == 0) assign(v, d + 1);
            for (int v : k) wv[v] = (v == colored[0]) ? colored[1] : colored[0];
        } else if (colored.size() == 1) {
            int u = colored[0];
            int z = -1;
            for (int v : k)
                if (color[v] == 0) {
                    z = v;
                    break;
                }
            assign(z, d + 2);
            for (int v : k)
                if (color[v] == 0) assign(v, d + 1);
            for (int v : k) wv[v] = (v == u) ? z : u;
        } else {
            assign(k[0], d + 2);
            assign(k[1], d + 3);
            for (int v : k)
                if (color[v] == 0) assign(v, d + 1);
            for (int v : k) wv[v] = (v == k[0]) ? k[1] : k[0];
        }
    }

    Coloring out(g.n);
    out.color = color;
    out.witness.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        check_internal(color[v] != 0, "vertex left uncolored");
        check_internal(wv[v] >= 0, "vertex left without a witness");
        out.witness[v] = color[wv[v]];
    }
    check_internal(verify_cfon(g, out).valid, "modulator coloring failed verification");
    check_internal(verify_witness(g, out, out.witness).valid,
                   "modulator witness map is wrong");
    check_internal(out.colors_used() <= d + 3, "modulator coloring over budget");
    return out;
}

Coloring cfcn_by_dc(const Graph& g, const std::vector<int>& xin) {
    if (!is_connected(g)) throw PreconditionError("graph must be connected");
    std::vector<int> X = xin;
    require_modulator(g, X);
    int d = (int)X.size();
    std::vector<int> xidx(g.n, 0);
    for (int i = 0; i < d; ++i) xidx[X[i]] = i + 1;
    std::vector<std::vector<int>> cliques = cliques_of(g, X);

    std::vector<char> in_y(g.n, 0);
    bool y_nonempty = false;
    for (int v : X)
        for (int y : g.adj[v])
            if (xidx[y] != 0) {
                in_y[v] = 1;
                y_nonempty = true;
            }

    std::vector<int> color(g.n, 0);
    std::vector<int> wv(g.n, -1);

    // a clique vertex touching two or more edgeless modulator vertices lets
    // every modulator vertex keep its own index
    int hub = -1;
    for (const std::vector<int>& k : cliques) {
        for (int u : k) {
            int cnt = 0;
            for (int y : g.adj[u]) cnt += (xidx[y] != 0 && !in_y[y]) ? 1 : 0;
            if (cnt >= 2) {
                hub = u;
                break;
            }
        }
        if (hub >= 0) break;
    }

    if (d == 0) {
        // a single clique: one leader, everyone else alike
        check_internal(cliques.size() == 1, "connected cluster graph must be one clique");
        const std::vector<int>& k = cliques.front();
        color[k[0]] = 1;
        for (size_t i = 1; i < k.size(); ++i) color[k[i]] = 2;
        for (int v : k) wv[v] = k[0];
    } else if (hub >= 0) {
        std::vector<int> loners;
        for (int y : g.adj[hub])
            if (xidx[y] != 0 && !in_y[y]) loners.push_back(y);
        std::sort(loners.begin(), loners.end(),
                  [&](int a, int b) { return xidx[a] < xidx[b]; });
        int i1 = xidx[loners[0]];
        int i2 = xidx[loners[1]];
        color[hub] = i1;
        for (int v : loners) {
            color[v] = d + 1;
            wv[v] = hub;
        }
        for (int v : X)
            if (color[v] == 0) {
                color[v] = xidx[v];
                wv[v] = v;
            }
        for (const std::vector<int>& k : cliques) {
            bool has_colored = false;
            for (int v : k) has_colored = has_colored || color[v] != 0;
            int anchor;
            if (has_colored) {
                anchor = hub; // only the hub's clique has a colored vertex here
            } else {
                anchor = k.front();
                color[anchor] = i2;
            }
            for (int v : k) {
                if (color[v] == 0) color[v] = d + 1;
                wv[v] = anchor;
            }
        }
    } else if (y_nonempty) {
        // an edge inside the modulator frees one index for the cliques
        int vi = -1;
        for (int v : X)
            if (in_y[v]) {
                vi = v;
                break;
            }
        int vj = -1;
        for (int y : g.adj[vi])
            if (xidx[y] != 0) {
                vj = y;
                break;
            }
        int j = xidx[vj];
        color[vi] = xidx[vi];
        color[vj] = d + 1;
        wv[vi] = vi;
        wv[vj] = vi;
        for (int v : X)
            if (color[v] == 0) {
                color[v] = xidx[v];
                wv[v] = v;
            }
        for (const std::vector<int>& k : cliques) {
            int anchor = k.front();
            color[anchor] = j;
            for (int v : k) {
                if (color[v] == 0) color[v] = d + 1;
                wv[v] = anchor;
            }
        }
    } else {
        // independent modulator and every clique vertex sees at most one of it
        for (const std::vector<int>& k : cliques)
            for (int u : k) {
                int cnt = 0;
                for (int y : g.adj[u]) cnt += xidx[y] != 0 ? 1 : 0;
                check_internal(cnt <= 1, "clique vertex with two modulator neighbors slipped "
                                         "past the case dispatch");
            }
        for (const std::vector<int>& k : cliques) {
            color[k.front()] = 1;
            for (size_t i = 1; i < k.size(); ++i) color[k[i]] = 2;
            for (int v : k) wv[v] = k.front();
        }
        for (int v : X) {
            color[v] = 3;
            wv[v] = v;
        }
    }

    Coloring out(g.n);
    out.color = color;
    out.witness.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        check_internal(color[v] != 0, "vertex left uncolored");
        check_internal(wv[v] >= 0, "vertex left without a witness");
        out.witness[v] = color[wv[v]];
    }
    check_internal(verify_cfcn(g, out).valid, "closed modulator coloring failed verification");
    check_closed_witness(g, out);
    check_internal(out.colors_used() <= std::max(3, d + 1),
                   "closed modulator coloring over budget");
    return out;
}

} // namespace cfon
