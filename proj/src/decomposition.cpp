#include "cfon/decomposition.hpp"
#include "cfon/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cfon {

namespace {
int width_of(const std::vector<std::vector<int>>& bags) {
    size_t mx = 0;
    for (const auto& b : bags) mx = std::max(mx, b.size());
    return (int)mx - 1;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool contains(const std::vector<int>& sorted, int v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}
} // namespace

int PathDecomposition::width() const { return width_of(bags); }

int SemiNicePathDecomposition::width() const {
    size_t mx = 0;
    for (const auto& b : bags) mx = std::max(mx, b.bag.size());
    return (int)mx - 1;
}

PdVerdict validate_path_decomposition(const Graph& g, const PathDecomposition& pd) {
    PdVerdict out;
    std::vector<int> first(g.n, -1), last(g.n, -1);
    for (int i = 0; i < (int)pd.bags.size(); ++i) {
        for (int v : pd.bags[i]) {
            if (v < 0 || v >= g.n) {
                out.violations.push_back("bag " + std::to_string(i + 1) +
                                         " holds unknown vertex " + std::to_string(v + 1));
                continue;
            }
            if (first[v] < 0) first[v] = i;
            last[v] = i;
        }
    }
    for (int v = 0; v < g.n; ++v)
        if (first[v] < 0)
            out.violations.push_back("vertex " + std::to_string(v + 1) + " is in no bag");
    for (int v = 0; v < g.n; ++v) {
        if (first[v] < 0) continue;
        for (int i = first[v]; i <= last[v]; ++i)
            if (!contains(pd.bags[i], v)) {
                out.violations.push_back("vertex " + std::to_string(v + 1) +
                                         " missing from bag " + std::to_string(i + 1) +
                                         " inside its interval");
                break;
            }
    }
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (const auto& b : pd.bags)
            if (contains(b, u) && contains(b, v)) {
                covered = true;
                break;
            }
        if (!covered)
            out.violations.push_back("edge {" + std::to_string(u + 1) + "," +
                                     std::to_string(v + 1) + "} in no bag");
    }
    out.valid = out.violations.empty();
    out.width = width_of(pd.bags);
    return out;
}

PathDecomposition make_nice(const Graph& g, const PathDecomposition& pd) {
    PdVerdict v = validate_path_decomposition(g, pd);
    if (!v.valid)
        throw PreconditionError("input decomposition invalid: " + v.violations.front());
    PathDecomposition out;
    std::vector<int> cur; // sorted
    out.bags.push_back(cur);
    auto step = [&](int vertex, bool add) {
        if (add) {
            cur.insert(std::upper_bound(cur.begin(), cur.end(), vertex), vertex);
        } else {
            cur.erase(std::lower_bound(cur.begin(), cur.end(), vertex));
        }
        out.bags.push_back(cur);
    };
    for (size_t i = 0; i <= pd.bags.size(); ++i) {
        const std::vector<int> next = i < pd.bags.size() ? pd.bags[i] : std::vector<int>{};
        // forget first, then introduce: intermediate bags never outgrow either side
        for (int x : set_minus(cur, next)) step(x, false);
        for (int x : set_minus(next, cur)) step(x, true);
    }
    check_internal((int)out.bags.size() == 2 * g.n + 1, "nice form must have 2n+1 bags");
    check_internal(out.width() <= std::max(v.width, 0), "nice form grew the width");
    PdVerdict nv = validate_path_decomposition(g, out);
    check_internal(nv.valid, "nice form broke a decomposition axiom");
    return out;
}

namespace {
struct WorkBag {
    std::vector<int> verts;
    std::pair<int, int> special{-1, -1}; // (delayed vertex, partner)
};

// delta of b against prev, as (added, removed)
std::pair<std::vector<int>, std::vector<int>> delta(const WorkBag& prev, const WorkBag& b) {
    return {set_minus(b.verts, prev.verts), set_minus(prev.verts, b.verts)};
}
} // namespace

SemiNicePathDecomposition make_semi_nice(const Graph& g, const PathDecomposition& nice) {
    if (!isolated_vertices(g).empty())
        throw PreconditionError("isolated vertex " +
                                std::to_string(isolated_vertices(g)[0] + 1) +
                                "; every vertex needs a neighbor to pair with");
    PdVerdict val = validate_path_decomposition(g, nice);
    if (!val.valid) throw PreconditionError("input decomposition invalid: " + val.violations.front());
    std::vector<WorkBag> bags;
    for (const auto& b : nice.bags) bags.push_back({b, {-1, -1}});
    if (bags.empty() || !bags.front().verts.empty() || !bags.back().verts.empty())
        throw PreconditionError("nice decomposition must start and end with empty bags");
    for (size_t i = 1; i < bags.size(); ++i) {
        auto [added, removed] = delta(bags[i - 1], bags[i]);
        if (added.size() + removed.size() != 1)
            throw PreconditionError("bags " + std::to_string(i) + "," + std::to_string(i + 1) +
                                    " do not differ by a single vertex");
    }

    long guard = (long)bags.size() * (g.n + 2) + 16;
    bool changed = true;
    while (changed) {
        check_internal(guard-- > 0, "fix-up failed to terminate");
        changed = false;
        for (size_t p = 1; p < bags.size() && !changed; ++p) {
            auto [added, removed] = delta(bags[p - 1], bags[p]);
            if (bags[p].special.first >= 0) continue; // already repaired here
            if (added.size() != 1) continue;
            int v = added[0];
            bool has_nbr = false;
            for (int w : g.adj[v])
                if (contains(bags[p].verts, w)) has_nbr = true;
            if (has_nbr) continue;

            // the vertex arrived before any neighbor: find the first bag that
            // holds one, delay v until there
            size_t q = 0;
            int vhat = -1;
            for (size_t j = p + 1; j < bags.size() && q == 0; ++j)
                for (int w : g.adj[v])
                    if (contains(bags[j].verts, w)) {
                        q = j;
                        vhat = w;
                        break;
                    }
            check_internal(q > 0, "no later bag holds a neighbor of the delayed vertex");
            check_internal(bags[q].special.first < 0, "first neighbor bag cannot be special");
            {
                auto [qa, qr] = delta(bags[q - 1], bags[q]);
                check_internal(qa.size() == 1 && qr.empty() && qa[0] == vhat,
                               "first neighbor bag must introduce that neighbor");
                int nbrs_of_v = 0;
                for (int w : g.adj[v])
                    if (contains(bags[q].verts, w)) ++nbrs_of_v;
                check_internal(nbrs_of_v == 1, "delayed vertex must have a lone neighbor there");
            }
            int fanout = 0; // neighbors of vhat in its introduce bag
            for (int w : g.adj[vhat])
                if (contains(bags[q].verts, w)) ++fanout;
            check_internal(fanout >= 1, "partner must know someone in its bag");

            for (size_t j = p + 1; j < q; ++j) {
                auto it = std::lower_bound(bags[j].verts.begin(), bags[j].verts.end(), v);
                check_internal(it != bags[j].verts.end() && *it == v,
                               "delayed vertex missing between old and new spot");
                bags[j].verts.erase(it);
            }
            if (fanout > 1) {
                // delay v into a copy of the neighbor bag placed just before it
                WorkBag pre;
                pre.verts = set_minus(bags[q].verts, {v});
                bags.erase(bags.begin() + p);
                bags.insert(bags.begin() + (q - 1), pre);
            } else {
                // v and its lone neighbor only know each other there: fuse
                bags[q].special = {v, vhat};
                bags.erase(bags.begin() + p);
            }
            changed = true;
        }
    }

    SemiNicePathDecomposition out;
    for (size_t i = 0; i < bags.size(); ++i) {
        SnBag sb;
        sb.bag = bags[i].verts;
        if (i == 0) {
            check_internal(sb.bag.empty(), "first bag must stay empty");
            sb.kind = SnKind::Empty;
        } else {
            auto [added, removed] = delta(bags[i - 1], bags[i]);
            if (added.empty() && removed.empty() && sb.bag.empty()) {
                sb.kind = SnKind::Empty;
            } else if (added.size() == 1 && removed.empty()) {
                sb.kind = SnKind::Introduce;
                sb.v = added[0];
            } else if (removed.size() == 1 && added.empty()) {
                sb.kind = SnKind::Forget;
                sb.v = removed[0];
            } else if (added.size() == 2 && removed.empty()) {
                auto sp = bags[i].special;
                check_internal(sp.first >= 0, "double introduction without a fusion mark");
                check_internal((added[0] == std::min(sp.first, sp.second) &&
                                added[1] == std::max(sp.first, sp.second)),
                               "fusion mark does not match the introduced pair");
                sb.kind = SnKind::Special;
                sb.v = sp.first;
                sb.vhat = sp.second;
            } else {
                throw InternalError("fix-up produced an unrecognizable bag transition");
            }
        }
        out.bags.push_back(std::move(sb));
    }
    PdVerdict sv = validate_semi_nice(g, out);
    check_internal(sv.valid, "fix-up output invalid: " + (sv.violations.empty()
                                                              ? std::string("?")
                                                              : sv.violations.front()));
    check_internal(out.width() <= val.width, "fix-up grew the width");
    check_internal(out.bags.size() <= nice.bags.size(), "fix-up grew the bag count");
    return out;
}

PdVerdict validate_semi_nice(const Graph& g, const SemiNicePathDecomposition& snd) {
    PdVerdict out;
    PathDecomposition flat;
    for (const auto& b : snd.bags) flat.bags.push_back(b.bag);
    PdVerdict base = validate_path_decomposition(g, flat);
    out.violations = base.violations;
    out.width = base.width;
    if (snd.bags.empty() || !snd.bags.front().bag.empty() || !snd.bags.back().bag.empty())
        out.violations.push_back("end bags must be empty");
    for (size_t i = 1; i < snd.bags.size(); ++i) {
        const auto& prev = snd.bags[i - 1].bag;
        const auto& cur = snd.bags[i];
        auto added = set_minus(cur.bag, prev);
        auto removed = set_minus(prev, cur.bag);
        std::string where = "bag " + std::to_string(i + 1);
        switch (cur.kind) {
            case SnKind::Empty:
                if (!(added.empty() && removed.empty() && cur.bag.empty()))
                    out.violations.push_back(where + " tagged empty but differs");
                break;
            case SnKind::Introduce: {
                if (!(added.size() == 1 && removed.empty() && added[0] == cur.v)) {
                    out.violations.push_back(where + " does not introduce its vertex");
                    break;
                }
                bool has = false;
                for (int w : g.adj[cur.v])
                    if (contains(cur.bag, w)) has = true;
                if (!has)
                    out.violations.push_back(where + " introduces vertex " +
                                             std::to_string(cur.v + 1) + " with no neighbor");
                break;
            }
            case SnKind::Forget:
                if (!(removed.size() == 1 && added.empty() && removed[0] == cur.v))
                    out.violations.push_back(where + " does not forget its vertex");
                break;
            case SnKind::Special: {
                std::vector<int> want{std::min(cur.v, cur.vhat), std::max(cur.v, cur.vhat)};
                if (!(removed.empty() && added == want)) {
                    out.violations.push_back(where + " does not introduce its pair");
                    break;
                }
                for (auto [a, b] : {std::pair{cur.v, cur.vhat}, std::pair{cur.vhat, cur.v}}) {
                    std::vector<int> nb;
                    for (int w : g.adj[a])
                        if (contains(cur.bag, w)) nb.push_back(w);
                    if (nb != std::vector<int>{b})
                        out.violations.push_back(where + ": vertex " + std::to_string(a + 1) +
                                                 " must know exactly its partner there");
                }
                break;
            }
        }
    }
    if (!snd.bags.empty() && snd.bags.front().kind != SnKind::Empty)
        out.violations.push_back("first bag must be tagged empty");
    out.valid = out.violations.empty();
    return out;
}

PathDecomposition pathwidth_exact_small(const Graph& g, int n_cap) {
    if (g.n < 1) throw PreconditionError("empty graph");
    if (n_cap > 20) n_cap = 20;
    if (g.n > n_cap)
        throw CapError("exact pathwidth capped at " + std::to_string(n_cap) +
                       " vertices (graph has " + std::to_string(g.n) + ")");
    int n = g.n;
    std::vector<uint32_t> nbr(n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : g.adj[v]) nbr[v] |= 1u << w;
    size_t full = (size_t)1 << n;
    std::vector<int8_t> cost(full, 0);
    std::vector<int8_t> parent(full, -1);
    for (size_t s = 1; s < full; ++s) {
        // vertices inside s that still see something outside
        int boundary = 0;
        for (int v = 0; v < n; ++v)
            if ((s >> v & 1) && (nbr[v] & ~(uint32_t)s)) ++boundary;
        int best = 127, arg = -1;
        for (int v = 0; v < n; ++v) {
            if (!(s >> v & 1)) continue;
            int c = std::max((int)cost[s ^ ((size_t)1 << v)], boundary);
            if (c < best) {
                best = c;
                arg = v;
            }
        }
        cost[s] = (int8_t)best;
        parent[s] = (int8_t)arg;
    }
    std::vector<int> order(n);
    size_t s = full - 1;
    for (int i = n - 1; i >= 0; --i) {
        order[i] = parent[s];
        s ^= (size_t)1 << order[i];
    }
    PathDecomposition out;
    uint32_t placed = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<int> bag;
        for (int v = 0; v < n; ++v)
            if ((placed >> v & 1) && (nbr[v] & ~placed)) bag.push_back(v);
        bag.push_back(order[i]);
        std::sort(bag.begin(), bag.end());
        out.bags.push_back(std::move(bag));
        placed |= 1u << order[i];
    }
    PdVerdict v = validate_path_decomposition(g, out);
    check_internal(v.valid, "ordering-derived decomposition invalid");
    check_internal(v.width == cost[full - 1], "derived width disagrees with the search value");
    return out;
}

namespace {
std::string bags_to_text(const std::vector<std::vector<int>>& bags,
                         const std::vector<std::string>& tags) {
    int n = 0;
    size_t mx = 0;
    for (const auto& b : bags) {
        mx = std::max(mx, b.size());
        for (int v : b) n = std::max(n, v + 1);
    }
    std::ostringstream out;
    out << "s pd " << bags.size() << ' ' << mx << ' ' << n << '\n';
    for (size_t i = 0; i < bags.size(); ++i) {
        out << "b " << i + 1;
        if (!tags.empty()) out << ' ' << tags[i];
        for (int v : bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    return out.str();
}

struct PdLines {
    size_t count = 0, maxbag = 0;
    std::vector<std::pair<std::string, std::vector<int>>> rows; // (tag or "", verts)
};

PdLines parse_pd_text(const std::string& text, bool tagged) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    PdLines out;
    size_t expect_index = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto bad = [&](const std::string& why) {
            throw ParseError("line " + std::to_string(lineno) + ": " + why);
        };
        if (tok == "c") continue;
        if (tok == "s") {
            std::string kind;
            long bags, mx, n;
            if (!(ls >> kind >> bags >> mx >> n) || kind != "pd" || bags < 0)
                bad("malformed s-line");
            if (have_header) bad("duplicate s-line");
            have_header = true;
            out.count = (size_t)bags;
            out.maxbag = (size_t)mx;
            (void)n;
            continue;
        }
        if (tok != "b") bad("unexpected token '" + tok + "'");
        if (!have_header) bad("b-line before s-line");
        long idx;
        if (!(ls >> idx)) bad("missing bag index");
        if ((size_t)idx != expect_index) bad("bag indices must run 1..count in order");
        ++expect_index;
        std::string tag;
        std::vector<int> verts;
        if (tagged) {
            if (!(ls >> tag) || (tag != "E" && tag != "I" && tag != "F" && tag != "S"))
                bad("expected tag E/I/F/S");
            int need = tag == "E" ? 0 : (tag == "S" ? 2 : 1);
            for (int i = 0; i < need; ++i) {
                long v;
                if (!(ls >> v) || v < 1) bad("tag needs vertex arguments");
                tag += ' ' + std::to_string(v);
            }
        }
        long v;
        while (ls >> v) {
            if (v < 1) bad("labels are 1-based");
            verts.push_back((int)v - 1);
        }
        if (!ls.eof()) bad("trailing garbage");
        std::vector<int> sorted = verts;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            bad("duplicate vertex in bag");
        if (verts != sorted) bad("bag vertices must be ascending");
        out.rows.emplace_back(tag, std::move(verts));
    }
    if (!have_header) throw ParseError("missing s-line");
    if (out.rows.size() != out.count)
        throw ParseError("s-line promises " + std::to_string(out.count) + " bags, got " +
                         std::to_string(out.rows.size()));
    size_t mx = 0;
    for (const auto& [t, vs] : out.rows) mx = std::max(mx, vs.size());
    if (mx != out.maxbag) throw ParseError("s-line max bag size disagrees with the bags");
    return out;
}
} // namespace

PathDecomposition parse_path_decomposition(const std::string& text) {
    PdLines lines = parse_pd_text(text, false);
    PathDecomposition out;
    for (auto& [t, vs] : lines.rows) out.bags.push_back(std::move(vs));
    return out;
}

std::string serialize_path_decomposition(const PathDecomposition& pd) {
    return bags_to_text(pd.bags, {});
}

SemiNicePathDecomposition parse_semi_nice(const std::string& text) {
    PdLines lines = parse_pd_text(text, true);
    SemiNicePathDecomposition out;
    for (auto& [tag, vs] : lines.rows) {
        SnBag b;
        b.bag = std::move(vs);
        std::istringstream ts(tag);
        std::string kind;
        ts >> kind;
        long x, y;
        if (kind == "E") {
            b.kind = SnKind::Empty;
        } else if (kind == "I") {
            b.kind = SnKind::Introduce;
            ts >> x;
            b.v = (int)x - 1;
        } else if (kind == "F") {
            b.kind = SnKind::Forget;
            ts >> x;
            b.v = (int)x - 1;
        } else {
            b.kind = SnKind::Special;
            ts >> x >> y;
            b.v = (int)x - 1;
            b.vhat = (int)y - 1;
        }
        out.bags.push_back(std::move(b));
    }
    return out;
}

std::string serialize_semi_nice(const SemiNicePathDecomposition& snd) {
    std::vector<std::vector<int>> bags;
    std::vector<std::string> tags;
    for (const auto& b : snd.bags) {
        bags.push_back(b.bag);
        switch (b.kind) {
            case SnKind::Empty: tags.push_back("E"); break;
            case SnKind::Introduce: tags.push_back("I " + std::to_string(b.v + 1)); break;
            case SnKind::Forget: tags.push_back("F " + std::to_string(b.v + 1)); break;
            case SnKind::Special:
                tags.push_back("S " + std::to_string(b.v + 1) + ' ' + std::to_string(b.vhat + 1));
                break;
        }
    }
    return bags_to_text(bags, tags);
}

} // namespace cfon
