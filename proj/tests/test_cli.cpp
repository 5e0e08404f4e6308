// end-to-end tests that drive the installed command-line binary as a
// subprocess. the binary path arrives as the first plain argument (wired up
// by the build system); everything runs inside a scratch directory.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cfon/generators.hpp"
#include "cfon/graph.hpp"

#ifdef _WIN32
#error "the subprocess harness assumes a POSIX shell"
#endif
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

static std::string g_cli;
static fs::path g_dir;

int main(int argc, char** argv) {
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (!a.empty() && a[0] != '-') g_cli = a;
    }
    if (g_cli.empty()) {
        // fall back to a sibling of the test binary for manual runs
        fs::path guess = fs::path(argv[0]).parent_path() / "cfon_cli";
        if (fs::exists(guess)) g_cli = guess.string();
    }
    if (g_cli.empty() || !fs::exists(g_cli)) {
        std::fprintf(stderr, "usage: %s <path-to-cli-binary> [doctest options]\n", argv[0]);
        return 1;
    }
    std::error_code ec;
    g_dir = fs::temp_directory_path() / ("cfon_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(g_dir, ec);
    int rc = ctx.run();
    fs::remove_all(g_dir, ec);
    return rc;
}

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

CmdResult run_cli(const std::string& args) {
    fs::path of = g_dir / "stdout.txt", ef = g_dir / "stderr.txt";
    std::string cmd = "'" + g_cli + "' " + args + " >'" + of.string() + "' 2>'" + ef.string() + "'";
    int raw = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(of);
    r.err = slurp(ef);
    return r;
}

fs::path write_graph(const std::string& name, const cfon::Graph& g) {
    fs::path p = g_dir / name;
    spill(p, cfon::serialize_edge_list(g));
    return p;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

int extract_int(const std::string& text, const std::string& key) {
    size_t pos = text.find(key);
    REQUIRE(pos != std::string::npos);
    return std::atoi(text.c_str() + pos + key.size());
}

std::string strip_time(std::string text) {
    size_t pos = text.find("time_ms: ");
    if (pos == std::string::npos) return text;
    size_t end = text.find('\n', pos);
    text.erase(pos, end - pos + 1);
    return text;
}

std::string coloring_block(const std::string& report) {
    size_t c0 = report.find("== COLORING ==\n");
    size_t c1 = report.find("== WITNESS ==");
    REQUIRE(c0 != std::string::npos);
    REQUIRE(c1 != std::string::npos);
    c0 += 15;
    return report.substr(c0, c1 - c0);
}

} // namespace

TEST_CASE("color: a five-cycle is handled by the outerplanar pipeline in three colors") {
    fs::path g = write_graph("c5.txt", cfon::generate_cycle(5));
    CmdResult r = run_cli("color '" + g.string() + "'");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "method: outerplanar"));
    CHECK(extract_int(r.out, "colors_used: ") == 3);
    CHECK(contains(r.out, "valid: true"));
}

TEST_CASE("color: the subdivided 4-clique needs exactly four colors under the feedback method") {
    fs::path g = write_graph("kstar4.txt", cfon::generate_subdivided_clique(4));
    CmdResult r = run_cli("color '" + g.string() + "' --method fvs");
    CHECK(r.code == 0);
    CHECK(extract_int(r.out, "declared_bound: ") == 4);
    CHECK(extract_int(r.out, "colors_used: ") == 4);
    CHECK(contains(r.out, "valid: true"));
}

TEST_CASE("color: a path colored by the decomposition sweep stays under its bound") {
    fs::path g = write_graph("path5.txt", cfon::generate_path(5));
    CmdResult r = run_cli("color '" + g.string() + "' --method pathwidth");
    CHECK(r.code == 0);
    CHECK(extract_int(r.out, "colors_used: ") <= 3);
    CHECK(contains(r.out, "width: 1"));
    CHECK(contains(r.out, "valid: true"));
}

TEST_CASE("color: explicit seed lands in the parameter block") {
    fs::path g = write_graph("c5s.txt", cfon::generate_cycle(5));
    CmdResult r = run_cli("color '" + g.string() + "' --seed 7");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "seed: 7"));
}

TEST_CASE("color: reports are reproducible byte for byte apart from timing") {
    fs::path g = write_graph("mop.txt", cfon::generate_random_maximal_outerplanar(30, 3));
    CmdResult a = run_cli("color '" + g.string() + "'");
    CmdResult b = run_cli("color '" + g.string() + "'");
    CHECK(a.code == 0);
    CHECK(strip_time(a.out) == strip_time(b.out));
}

TEST_CASE("verify: accepts what color produced and pinpoints planted damage") {
    fs::path g = write_graph("c6.txt", cfon::generate_cycle(6));
    CmdResult r = run_cli("color '" + g.string() + "'");
    REQUIRE(r.code == 0);
    fs::path col = g_dir / "c6_col.txt";
    spill(col, coloring_block(r.out));

    CmdResult v = run_cli("verify '" + g.string() + "' '" + col.string() + "'");
    CHECK(v.code == 0);
    CHECK(contains(v.out, "valid"));
    CHECK(contains(v.out, "colors_used: "));

    fs::path bad = g_dir / "c6_bad.txt";
    spill(bad, "1 1\n2 1\n3 1\n4 1\n5 1\n6 1\n");
    CmdResult vb = run_cli("verify '" + g.string() + "' '" + bad.string() + "'");
    CHECK(vb.code == 1);
    CHECK(contains(vb.out, "invalid"));
    CHECK(contains(vb.out, "vertex 1"));

    // a partial file fed to the total-coloring verifier is a usage error
    fs::path part = g_dir / "c6_part.txt";
    spill(part, "1 1\n2 -\n3 1\n4 -\n5 2\n6 -\n");
    CmdResult vp = run_cli("verify '" + g.string() + "' '" + part.string() + "'");
    CHECK(vp.code == 2);
    CHECK(contains(vp.err, "precondition"));

    CmdResult vpp =
        run_cli("verify '" + g.string() + "' '" + part.string() + "' --variant partial-open");
    CHECK((vpp.code == 0 || vpp.code == 1)); // judged, not rejected
}

TEST_CASE("verify: closed-neighborhood variant differs from the open one") {
    // on a triangle, all-distinct colors are conflict-free for closed
    // neighborhoods and for open ones too; a 2-coloring 1,1,2 fails open
    // (vertex 3 sees 1 twice) but closed keeps 2 unique at vertices 1 and 2
    fs::path g = write_graph("tri.txt", cfon::generate_cycle(3));
    fs::path col = g_dir / "tri_col.txt";
    spill(col, "1 1\n2 1\n3 2\n");
    CmdResult open_v = run_cli("verify '" + g.string() + "' '" + col.string() + "'");
    CHECK(open_v.code == 1);
    CmdResult closed_v =
        run_cli("verify '" + g.string() + "' '" + col.string() + "' --variant closed");
    CHECK(closed_v.code == 0);
}

TEST_CASE("exact: optimum search prints the certificate coloring") {
    fs::path g = write_graph("c5e.txt", cfon::generate_cycle(5));
    CmdResult r = run_cli("exact '" + g.string() + "'");
    CHECK(r.code == 0);
    CHECK(extract_int(r.out, "k: ") == 3);
    CHECK(contains(r.out, "== COLORING =="));

    fs::path p3 = write_graph("p3e.txt", cfon::generate_path(3));
    CmdResult rp = run_cli("exact '" + p3.string() + "'");
    CHECK(rp.code == 0);
    CHECK(extract_int(rp.out, "k: ") == 2);
}

TEST_CASE("exact: refuses oversized instances unless the cap is raised") {
    fs::path g = write_graph("mop30e.txt", cfon::generate_random_maximal_outerplanar(30, 3));
    CmdResult r = run_cli("exact '" + g.string() + "'");
    CHECK(r.code == 3);
    CHECK(contains(r.err, "cap"));

    fs::path small = write_graph("p13e.txt", cfon::generate_path(13));
    CmdResult rs = run_cli("exact '" + small.string() + "'");
    CHECK(rs.code == 3);
    CmdResult rr = run_cli("exact '" + small.string() + "' --cap 13");
    CHECK(rr.code == 0);
    CHECK(extract_int(rr.out, "k: ") == 2);
}

TEST_CASE("generate: each family writes a loadable graph of the right shape") {
    struct Row {
        std::string family, params;
        int n, m;
    };
    std::vector<Row> rows = {
        {"path", "6", 6, 5},       {"cycle", "8", 8, 8},
        {"star", "5", 5, 4},       {"tree", "12", 12, 11},
        {"mop", "12", 12, 21},     {"subdivided-clique", "4", 10, 12},
        {"pentagon-chain", "3", 11, 13},
    };
    for (const auto& row : rows) {
        fs::path out = g_dir / ("gen_" + row.family + ".txt");
        CmdResult r = run_cli("generate --family " + row.family + " --params " + row.params +
                              " --seed 5 --out '" + out.string() + "'");
        CHECK(r.code == 0);
        cfon::Graph g = cfon::parse_edge_list(slurp(out));
        CHECK(g.n == row.n);
        CHECK(g.edge_count() == row.m);
    }
}

TEST_CASE("generate: certificate families drop a side file the color command accepts") {
    fs::path out = g_dir / "cm.txt";
    CmdResult r = run_cli("generate --family cluster-modulator --params 2 3 3 --seed 4 --out '" +
                          out.string() + "'");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "certificate: "));
    fs::path cert = g_dir / "cm.txt.cert";
    REQUIRE(fs::exists(cert));

    CmdResult c = run_cli("color '" + out.string() + "' --method dc --certificate '" +
                          cert.string() + "'");
    CHECK(c.code == 0);
    CHECK(contains(c.out, "certificate_source: supplied"));
    CHECK(extract_int(c.out, "declared_bound: ") == 5);

    fs::path nd = g_dir / "nd.txt";
    CmdResult rn =
        run_cli("generate --family bounded-nd --params 3 4 --seed 2 --out '" + nd.string() + "'");
    CHECK(rn.code == 0);
    CHECK(fs::exists(g_dir / "nd.txt.cert"));
}

TEST_CASE("color: a supplied decomposition unlocks instances past the search cap") {
    cfon::Graph g = cfon::generate_path(14);
    fs::path gp = write_graph("p14.txt", g);
    CmdResult capped = run_cli("color '" + gp.string() + "' --method pathwidth");
    CHECK(capped.code == 3);

    std::ostringstream pd;
    pd << "s pd 13 2 14\n";
    for (int i = 0; i + 1 < 14; ++i) pd << "b " << i + 1 << " " << i + 1 << " " << i + 2 << "\n";
    fs::path pdf = g_dir / "p14_pd.txt";
    spill(pdf, pd.str());
    CmdResult ok =
        run_cli("color '" + gp.string() + "' --method pathwidth --decomposition '" +
                pdf.string() + "'");
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "decomposition_source: supplied"));
    CHECK(extract_int(ok.out, "colors_used: ") <= 3);

    fs::path badpd = g_dir / "p14_bad.txt";
    spill(badpd, "s pd 1 2 14\nb 1 1 2\n"); // misses most vertices
    CmdResult rej = run_cli("color '" + gp.string() + "' --method pathwidth --decomposition '" +
                            badpd.string() + "'");
    CHECK(rej.code == 2);
    CHECK(contains(rej.err, "precondition"));
}

TEST_CASE("audit: replays the structural evidence for the chosen method") {
    fs::path g = write_graph("p5a.txt", cfon::generate_path(5));
    CmdResult r = run_cli("audit '" + g.string() + "' --method pathwidth");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "method: pathwidth"));
    CHECK(contains(r.out, "max_bag: "));

    fs::path c5 = write_graph("c5a.txt", cfon::generate_cycle(5));
    CmdResult ro = run_cli("audit '" + c5.string() + "'");
    CHECK(ro.code == 0);
    CHECK(contains(ro.out, "method: outerplanar"));
    CHECK(contains(ro.out, "exempt edge"));
}

TEST_CASE("exit codes: unreadable and malformed input is a parse error") {
    CmdResult missing = run_cli("color '" + (g_dir / "no_such_file.txt").string() + "'");
    CHECK(missing.code == 1);
    CHECK(contains(missing.err, "parse error"));

    fs::path garbage = g_dir / "garbage.txt";
    spill(garbage, "this is not a graph\n");
    CmdResult bad = run_cli("color '" + garbage.string() + "'");
    CHECK(bad.code == 1);

    CmdResult usage = run_cli("color"); // missing required argument
    CHECK(usage.code == 1);

    CmdResult unknown_method =
        run_cli("color '" + garbage.string() + "' --method warp");
    CHECK(unknown_method.code == 1);
}

TEST_CASE("exit codes: structural preconditions are reported as such") {
    fs::path disc = g_dir / "disc.txt";
    spill(disc, cfon::serialize_edge_list(cfon::Graph::from_edges(4, {{0, 1}, {2, 3}})));
    CmdResult r = run_cli("color '" + disc.string() + "'");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "precondition"));

    // the outerplanar pipeline refuses graphs outside its class
    fs::path k4 = write_graph("k4p.txt",
                              cfon::Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
    CmdResult ro = run_cli("color '" + k4.string() + "' --method outerplanar");
    CHECK(ro.code == 2);
}

TEST_CASE("help output is a success, not an error") {
    CmdResult r = run_cli("--help");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "color"));
    CHECK(contains(r.out, "verify"));
    CmdResult rs = run_cli("color --help");
    CHECK(rs.code == 0);
}
