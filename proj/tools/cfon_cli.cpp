#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfon/certificates.hpp"
#include "cfon/coloring.hpp"
#include "cfon/decomposition.hpp"
#include "cfon/errors.hpp"
#include "cfon/exact.hpp"
#include "cfon/generators.hpp"
#include "cfon/graph.hpp"
#include "cfon/report.hpp"
#include "cfon/verify.hpp"

namespace {

using namespace cfon;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ParseError("cannot write '" + path + "'");
}

struct ColorArgs {
    std::string graph_file;
    std::string method = "auto";
    std::string decomposition_file;
    std::string certificate_file;
    long long seed = 0;
    bool seed_given = false;
};

int do_color(const ColorArgs& a) {
    Graph g = parse_edge_list(slurp(a.graph_file));
    RunOptions opt;
    opt.method = parse_method(a.method);

    SemiNicePathDecomposition snd_store;
    if (!a.decomposition_file.empty()) {
        std::string text = slurp(a.decomposition_file);
        try {
            snd_store = parse_semi_nice(text);
        } catch (const ParseError&) {
            PathDecomposition pd = parse_path_decomposition(text);
            PdVerdict pv = validate_path_decomposition(g, pd);
            if (!pv.valid)
                throw PreconditionError("supplied decomposition is invalid: " +
                                        pv.violations.front());
            snd_store = make_semi_nice(g, make_nice(g, pd));
        }
        opt.decomposition = &snd_store;
    }

    std::vector<int> cert_store;
    if (!a.certificate_file.empty()) {
        cert_store = parse_vertex_set(slurp(a.certificate_file), g.n);
        opt.certificate = &cert_store;
    }

    ColoringReport rep = run_color(g, opt);
    if (a.seed_given) rep.params.emplace_back("seed", std::to_string(a.seed));
    std::cout << format_report(rep);
    return rep.valid ? 0 : 1;
}

int do_verify(const std::string& graph_file, const std::string& coloring_file,
              const std::string& variant) {
    Graph g = parse_edge_list(slurp(graph_file));
    Coloring c = parse_coloring(slurp(coloring_file), g.n);
    Verdict vd;
    if (variant == "open")
        vd = verify_cfon(g, c);
    else if (variant == "closed")
        vd = verify_cfcn(g, c);
    else if (variant == "partial-open")
        vd = verify_partial_cfon(g, c);
    else
        throw ParseError("unknown variant '" + variant + "'");
    if (vd.valid) {
        std::cout << "valid\ncolors_used: " << vd.colors_used << '\n';
        return 0;
    }
    std::cout << "invalid\n";
    for (const auto& [v, reason] : vd.violations)
        std::cout << "vertex " << v + 1 << ": " << reason << '\n';
    return 1;
}

int do_exact(const std::string& graph_file, const std::string& variant, int cap) {
    Graph g = parse_edge_list(slurp(graph_file));
    ExactResult ex;
    if (variant == "open")
        ex = exact_chi_on(g, cap);
    else if (variant == "closed")
        ex = exact_chi_cn(g, cap);
    else if (variant == "partial-open")
        ex = exact_chi_on_partial(g, cap);
    else
        throw ParseError("unknown variant '" + variant + "'");
    std::cout << "k: " << ex.k << '\n';
    std::cout << "== COLORING ==\n" << serialize_coloring(ex.coloring);
    return 0;
}

std::string labels_line(const std::vector<int>& verts) {
    std::ostringstream out;
    for (size_t i = 0; i < verts.size(); ++i) {
        if (i) out << ' ';
        out << verts[i] + 1;
    }
    out << '\n';
    return out.str();
}

int do_generate(const std::string& family, const std::vector<int>& params, long long seed,
                const std::string& out_file) {
    auto want = [&](size_t k, const std::string& what) {
        if (params.size() != k)
            throw ParseError("family '" + family + "' takes --params " + what);
    };
    Graph g;
    std::string cert_text;
    if (family == "path") {
        want(1, "<n>");
        g = generate_path(params[0]);
    } else if (family == "cycle") {
        want(1, "<n>");
        g = generate_cycle(params[0]);
    } else if (family == "star") {
        want(1, "<n>");
        g = generate_star(params[0]);
    } else if (family == "tree") {
        want(1, "<n>");
        g = generate_random_tree(params[0], (uint64_t)seed);
    } else if (family == "mop") {
        want(1, "<n>");
        g = generate_random_maximal_outerplanar(params[0], (uint64_t)seed);
    } else if (family == "subdivided-clique") {
        want(1, "<n>");
        g = generate_subdivided_clique(params[0]);
    } else if (family == "pentagon-chain") {
        want(1, "<faces>");
        g = generate_pentagon_chain(params[0]);
    } else if (family == "cluster-modulator") {
        if (params.size() < 2)
            throw ParseError("family 'cluster-modulator' takes --params <d> <size>...");
        std::vector<int> sizes(params.begin() + 1, params.end());
        GeneratedGraph gg = generate_random_cluster_plus_modulator(sizes, params[0], (uint64_t)seed);
        g = gg.g;
        cert_text = labels_line(gg.modulator);
    } else if (family == "bounded-nd") {
        want(2, "<classes> <max_class_size>");
        GeneratedGraph gg = generate_random_bounded_nd(params[0], params[1], (uint64_t)seed);
        g = gg.g;
        for (const auto& cls : gg.planted_classes) cert_text += labels_line(cls);
    } else {
        throw ParseError("unknown family '" + family + "'");
    }
    spill(out_file, serialize_edge_list(g));
    std::cout << "written: " << out_file << '\n';
    std::cout << "n: " << g.n << '\n';
    std::cout << "m: " << g.edge_count() << '\n';
    if (!cert_text.empty()) {
        spill(out_file + ".cert", cert_text);
        std::cout << "certificate: " << out_file << ".cert\n";
    }
    return 0;
}

int do_audit(const std::string& graph_file, const std::string& method) {
    Graph g = parse_edge_list(slurp(graph_file));
    RunOptions opt;
    opt.method = parse_method(method);
    ColoringReport rep = run_color(g, opt);
    std::cout << "method: " << rep.method << '\n';
    for (const auto& line : rep.audit) std::cout << line << '\n';
    return rep.valid ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conflict-free coloring toolkit: constructions, verifiers, exact "
                 "oracles, generators"};
    app.require_subcommand(1);
    const std::string methods = "pathwidth, fvs, nd, dc, planar-partial, "
                                "outerplanar-partial, outerplanar, auto";

    ColorArgs ca;
    CLI::App* color = app.add_subcommand("color", "color a graph and print a report");
    color->add_option("graph", ca.graph_file, "edge list file")->required();
    color->add_option("--method", ca.method, "one of: " + methods + " (default auto)");
    color->add_option("--decomposition", ca.decomposition_file,
                      "path decomposition file (pathwidth method)");
    color->add_option("--certificate", ca.certificate_file,
                      "vertex set file: feedback vertex set (fvs) or cluster modulator (dc)");
    CLI::Option* seed_opt =
        color->add_option("--seed", ca.seed, "recorded in the report; the constructions "
                                             "are deterministic");

    std::string v_graph, v_coloring, v_variant = "open";
    CLI::App* verify = app.add_subcommand("verify", "check a coloring file against a graph");
    verify->add_option("graph", v_graph, "edge list file")->required();
    verify->add_option("coloring", v_coloring, "coloring file, one 'v c' line per vertex")
        ->required();
    verify->add_option("--variant", v_variant, "open, closed, or partial-open (default open)");

    std::string e_graph, e_variant = "open";
    int e_cap = 0;
    CLI::App* exact = app.add_subcommand("exact", "brute-force optimum (small graphs)");
    exact->add_option("graph", e_graph, "edge list file")->required();
    exact->add_option("--variant", e_variant, "open, closed, or partial-open (default open)");
    exact->add_option("--cap", e_cap,
                      "largest vertex count accepted (default: CFON_ORACLE_CAP or 12)");

    std::string g_family, g_out;
    std::vector<int> g_params;
    long long g_seed = 1;
    CLI::App* generate = app.add_subcommand("generate", "write an instance file");
    generate
        ->add_option("--family", g_family,
                     "path, cycle, star, tree, mop, subdivided-clique, pentagon-chain, "
                     "cluster-modulator (params: d size...), bounded-nd (params: classes "
                     "max_class_size)")
        ->required();
    generate->add_option("--params", g_params, "family parameters")->expected(-1);
    generate->add_option("--seed", g_seed, "random seed (default 1)");
    generate->add_option("--out", g_out, "output graph file; certificates go to <out>.cert")
        ->required();

    std::string a_graph, a_method = "auto";
    CLI::App* audit = app.add_subcommand("audit", "run a construction and print its audit");
    audit->add_option("graph", a_graph, "edge list file")->required();
    audit->add_option("--method", a_method, "one of: " + methods + " (default auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ca.seed_given = seed_opt->count() > 0;
        if (color->parsed()) return do_color(ca);
        if (verify->parsed()) return do_verify(v_graph, v_coloring, v_variant);
        if (exact->parsed()) return do_exact(e_graph, e_variant, e_cap);
        if (generate->parsed()) return do_generate(g_family, g_params, g_seed, g_out);
        if (audit->parsed()) return do_audit(a_graph, a_method);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return 2;
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant failed (this is a bug): " << e.what() << '\n';
        return 4;
    }
}
