#include "cfon/report.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cfon/certificates.hpp"
#include "cfon/errors.hpp"
#include "cfon/fvs_color.hpp"
#include "cfon/outerplanar_color.hpp"
#include "cfon/planar_partial.hpp"
#include "cfon/pathwidth_color.hpp"
#include "cfon/structural_color.hpp"
#include "cfon/verify.hpp"

namespace cfon {

namespace {

const std::vector<std::pair<std::string, Method>> kMethodNames = {
    {"pathwidth", Method::Pathwidth},
    {"fvs", Method::Fvs},
    {"nd", Method::Nd},
    {"dc", Method::Dc},
    {"planar-partial", Method::PlanarPartial},
    {"outerplanar-partial", Method::OuterplanarPartial},
    {"outerplanar", Method::Outerplanar},
    {"auto", Method::Auto},
};

std::string join_labels(const std::vector<int>& verts) {
    std::ostringstream out;
    for (size_t i = 0; i < verts.size(); ++i) {
        if (i) out << ' ';
        out << verts[i] + 1;
    }
    return out.str();
}

// a user-supplied vertex set must be a plausible subset before its defining
// property is even worth checking
std::vector<int> checked_vertex_set(const std::vector<int>& verts, int n,
                                    const std::string& what) {
    std::vector<int> s = verts;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw PreconditionError(what + " lists a vertex twice");
    if (!s.empty() && (s.front() < 0 || s.back() >= n))
        throw PreconditionError(what + " names a vertex outside the graph");
    return s;
}

// every block with at least three vertices must expose an outer cycle
bool outerplanar_applicable(const Graph& g) {
    BlockTree bt = block_decomposition(g);
    for (const auto& b : bt.blocks) {
        if (b.size() < 3) continue;
        try {
            outer_cycle(g.induced(b));
        } catch (const PreconditionError&) {
            return false;
        }
    }
    return true;
}

Method resolve_auto_with(const Graph& g, std::optional<std::vector<int>>& cert) {
    if (outerplanar_applicable(g)) return Method::Outerplanar;
    if (auto f = compute_fvs_exact(g, 8)) {
        cert = *f;
        return Method::Fvs;
    }
    if (auto x = compute_cluster_modulator_exact(g, 8)) {
        cert = *x;
        return Method::Dc;
    }
    if (g.n <= 12) return Method::Pathwidth;
    return Method::PlanarPartial;
}

void audit_partial_partition(const Graph& g, const PlanarPartialResult& pr, ColoringReport& r) {
    for (int v : pr.partition.v2)
        check_internal(pr.result.color[v] == 0, "a vertex outside the colored part got a color");
    for (int v = 0; v < g.n; ++v)
        if (pr.result.color[v] == 0)
            check_internal(std::binary_search(pr.partition.v2.begin(), pr.partition.v2.end(), v),
                           "an uncolored vertex escaped the uncolored part");
    r.audit.push_back("uncolored_exactly_v2: true");
    r.audit.push_back(std::string("proper_path: ") + (pr.fallback_used ? "fallback" : "exact"));
}

void audit_exempt_edges(const Graph& g, const OuterplanarRun& run, ColoringReport& r) {
    r.audit.push_back("exempt_edges: " + std::to_string(run.state.exempt.size()));
    if (run.state.exempt.empty()) return;
    BlockTree bt = block_decomposition(g);
    std::map<int, EarDecomposition> ears; // block index -> faces, global labels
    for (const auto& [a, b] : run.state.exempt) {
        int blk = -1;
        for (int i = 0; i < (int)bt.blocks.size() && blk < 0; ++i) {
            const auto& verts = bt.blocks[i];
            if (std::binary_search(verts.begin(), verts.end(), a) &&
                std::binary_search(verts.begin(), verts.end(), b))
                blk = i;
        }
        check_internal(blk >= 0, "excused edge outside every block");
        std::string line =
            "exempt edge (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "): ";
        if (bt.blocks[blk].size() == 2) {
            line += "bridge";
        } else {
            auto it = ears.find(blk);
            if (it == ears.end()) {
                Graph bg = g.induced(bt.blocks[blk]);
                EarDecomposition ed =
                    relabel_ears(ear_decomposition(bg, outer_cycle(bg), 0), bt.blocks[blk]);
                it = ears.emplace(blk, std::move(ed)).first;
            }
            auto fit = it->second.edge_faces.find({a, b});
            check_internal(fit != it->second.edge_faces.end(),
                           "excused edge missing from its block's face table");
            int faces = (int)fit->second.size();
            check_internal(faces == 1 || faces == 2, "inner edge outside the one-or-two face rule");
            line += "inside " + std::to_string(faces) + " face(s) of its block";
        }
        r.audit.push_back(line);
    }
}

void run_pathwidth(const Graph& g, const RunOptions& opt, ColoringReport& r) {
    SemiNicePathDecomposition local;
    const SemiNicePathDecomposition* snd = opt.decomposition;
    if (snd) {
        PdVerdict pv = validate_semi_nice(g, *snd);
        if (!pv.valid)
            throw PreconditionError("supplied decomposition is invalid: " + pv.violations.front());
        r.params.emplace_back("decomposition_source", "supplied");
    } else {
        PathDecomposition pd = pathwidth_exact_small(g); // CapError beyond the search cap
        local = make_semi_nice(g, make_nice(g, pd));
        snd = &local;
        r.params.emplace_back("decomposition_source", "computed");
    }
    SweepAudit sa;
    r.coloring = color_by_pathwidth(g, *snd, &sa);
    r.declared_bound = sa.declared_bound;
    r.params.emplace_back("width", std::to_string(snd->width()));
    r.audit.push_back("max_bag: " + std::to_string(sa.max_bag));
    r.audit.push_back("max_expensive: " + std::to_string(sa.max_expensive));
    r.audit.push_back("bag_guarantee: max bag " + std::to_string(sa.max_bag) +
                      " >= ceil(3*" + std::to_string(sa.max_expensive) +
                      "/2) = " + std::to_string((3 * sa.max_expensive + 1) / 2));
    check_internal(sa.technical_holds, "bag-size guarantee does not hold");
}

void run_fvs(const Graph& g, const RunOptions& opt, const std::optional<std::vector<int>>& auto_cert,
             ColoringReport& r) {
    std::vector<int> f;
    if (opt.certificate) {
        f = checked_vertex_set(*opt.certificate, g.n, "certificate");
        if (!is_acyclic_without(g, f))
            throw PreconditionError("certificate is not a feedback vertex set");
        r.params.emplace_back("certificate_source", "supplied");
    } else if (auto_cert) {
        f = *auto_cert;
        r.params.emplace_back("certificate_source", "computed");
    } else {
        auto opt_f = compute_fvs_exact(g);
        check_internal(opt_f.has_value(), "unbounded feedback vertex search came back empty");
        f = *opt_f;
        r.params.emplace_back("certificate_source", "computed");
    }
    r.coloring = color_by_fvs(g, f);
    r.declared_bound = (int)f.size() + 2;
    r.params.emplace_back("fvs_size", std::to_string(f.size()));
    r.params.emplace_back("fvs", join_labels(f));
}

void run_nd(const Graph& g, ColoringReport& r) {
    LiftedColoring lc = cfon_by_nd(g);
    r.coloring = lc.result;
    r.declared_bound = lc.bound;
    TypePartition tp = compute_type_partition(g);
    r.params.emplace_back("classes", std::to_string(tp.classes.size()));
    r.params.emplace_back("cl", std::to_string(tp.cl));
    r.params.emplace_back("ind", std::to_string(tp.ind));
    r.audit.push_back("bad_sets: " + std::to_string(lc.bad_log.size()));
    std::vector<int> seen;
    for (const auto& fix : lc.bad_log) {
        r.audit.push_back("bad class " + std::to_string(fix.cls + 1) + " fixed: " + fix.rule);
        seen.push_back(fix.cls);
    }
    std::sort(seen.begin(), seen.end());
    check_internal(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
                   "a bad class was repaired twice");
    r.audit.push_back("each_fixed_once: true");
}

void run_dc(const Graph& g, const RunOptions& opt, const std::optional<std::vector<int>>& auto_cert,
            ColoringReport& r) {
    std::vector<int> x;
    if (opt.certificate) {
        x = checked_vertex_set(*opt.certificate, g.n, "certificate");
        if (!is_cluster_without(g, x))
            throw PreconditionError("certificate removal does not leave disjoint cliques");
        r.params.emplace_back("certificate_source", "supplied");
    } else if (auto_cert) {
        x = *auto_cert;
        r.params.emplace_back("certificate_source", "computed");
    } else {
        auto opt_x = compute_cluster_modulator_exact(g);
        check_internal(opt_x.has_value(), "unbounded modulator search came back empty");
        x = *opt_x;
        r.params.emplace_back("certificate_source", "computed");
    }
    r.coloring = cfon_by_dc(g, x);
    r.declared_bound = (int)x.size() + 3;
    r.params.emplace_back("dc_size", std::to_string(x.size()));
    r.params.emplace_back("modulator", join_labels(x));
}

void run_planar_partial(const Graph& g, ColoringReport& r) {
    PlanarPartialResult pr = partial_cfon_planar(g);
    r.coloring = pr.result;
    r.partial = true;
    r.fallback_used = pr.fallback_used;
    r.declared_bound = pr.bound;
    r.params.emplace_back("v0_size", std::to_string(pr.partition.v0.size()));
    r.params.emplace_back("v1_size", std::to_string(pr.partition.v1.size()));
    r.params.emplace_back("v2_size", std::to_string(pr.partition.v2.size()));
    audit_partial_partition(g, pr, r);
}

void run_outerplanar_partial(const Graph& g, ColoringReport& r) {
    PlanarPartialResult pr = partial_cfon_outerplanar(g);
    r.coloring = pr.result;
    r.partial = true;
    r.fallback_used = pr.fallback_used;
    r.declared_bound = pr.bound;
    r.params.emplace_back("v0_size", std::to_string(pr.partition.v0.size()));
    r.params.emplace_back("v1_size", std::to_string(pr.partition.v1.size()));
    r.params.emplace_back("v2_size", std::to_string(pr.partition.v2.size()));
    audit_partial_partition(g, pr, r);
}

void run_outerplanar(const Graph& g, ColoringReport& r) {
    OuterplanarRun run = color_outerplanar_run(g);
    r.coloring = run.result;
    r.declared_bound = run.three_color_block ? 3 : 4;
    r.params.emplace_back("blocks", std::to_string(run.blocks));
    r.params.emplace_back("three_color_block", run.three_color_block ? "true" : "false");
    audit_exempt_edges(g, run, r);
}

} // namespace

Method parse_method(const std::string& name) {
    for (const auto& [s, m] : kMethodNames)
        if (s == name) return m;
    throw ParseError("unknown method '" + name + "'");
}

std::string method_name(Method m) {
    for (const auto& [s, mm] : kMethodNames)
        if (mm == m) return s;
    throw InternalError("method without a name");
}

Method resolve_auto(const Graph& g) {
    require_connected_no_isolated(g);
    std::optional<std::vector<int>> cert;
    return resolve_auto_with(g, cert);
}

ColoringReport run_color(const Graph& g, const RunOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    require_connected_no_isolated(g);

    ColoringReport r;
    r.n = g.n;
    r.m = g.edge_count();

    Method m = opt.method;
    std::optional<std::vector<int>> auto_cert;
    if (m == Method::Auto) m = resolve_auto_with(g, auto_cert);
    r.method = method_name(m);

    switch (m) {
    case Method::Pathwidth: run_pathwidth(g, opt, r); break;
    case Method::Fvs: run_fvs(g, opt, auto_cert, r); break;
    case Method::Nd: run_nd(g, r); break;
    case Method::Dc: run_dc(g, opt, auto_cert, r); break;
    case Method::PlanarPartial: run_planar_partial(g, r); break;
    case Method::OuterplanarPartial: run_outerplanar_partial(g, r); break;
    case Method::Outerplanar: run_outerplanar(g, r); break;
    case Method::Auto: throw InternalError("method resolution failed");
    }

    r.colors_used = r.coloring.colors_used();
    Verdict vd = r.partial ? verify_partial_cfon(g, r.coloring) : verify_cfon(g, r.coloring);
    r.valid = vd.valid;
    if (!r.coloring.witness.empty())
        r.valid = r.valid && verify_witness(g, r.coloring, r.coloring.witness).valid;
    if (r.valid && !r.fallback_used)
        check_internal(r.colors_used <= r.declared_bound, "colors exceed the declared bound");

    auto t1 = std::chrono::steady_clock::now();
    r.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return r;
}

std::string format_report(const ColoringReport& r) {
    std::ostringstream out;
    out << "== HEADER ==\n";
    out << "method: " << r.method << '\n';
    out << "n: " << r.n << '\n';
    out << "m: " << r.m << '\n';
    out << "== PARAMS ==\n";
    for (const auto& [k, v] : r.params) out << k << ": " << v << '\n';
    out << "== BOUND ==\n";
    out << "declared_bound: " << r.declared_bound << '\n';
    out << "colors_used: " << r.colors_used << '\n';
    out << "partial: " << (r.partial ? "true" : "false") << '\n';
    out << "fallback_used: " << (r.fallback_used ? "true" : "false") << '\n';
    out << "== COLORING ==\n";
    out << serialize_coloring(r.coloring);
    out << "== WITNESS ==\n";
    out << serialize_witness(r.coloring);
    if (!r.audit.empty()) {
        out << "== AUDIT ==\n";
        for (const auto& line : r.audit) out << line << '\n';
    }
    out << "== VERDICT ==\n";
    out << "valid: " << (r.valid ? "true" : "false") << '\n';
    out << "time_ms: " << r.time_ms << '\n';
    return out.str();
}

std::vector<int> parse_vertex_set(const std::string& text, int n) {
    std::vector<int> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "c") break; // comment: rest of the line
            long v;
            size_t used = 0;
            try {
                v = std::stol(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("vertex set: '" + tok + "' is not a label");
            }
            if (used != tok.size()) throw ParseError("vertex set: '" + tok + "' is not a label");
            if (v < 1 || v > n)
                throw ParseError("vertex set: label " + std::to_string(v) +
                                 " outside 1.." + std::to_string(n));
            out.push_back((int)v - 1);
        }
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw ParseError("vertex set: duplicate label");
    return out;
}

} // namespace cfon
