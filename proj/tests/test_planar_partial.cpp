#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <utility>
#include <vector>

#include "cfon/errors.hpp"
#include "cfon/exact.hpp"
#include "cfon/generators.hpp"
#include "cfon/graph.hpp"
#include "cfon/planar_partial.hpp"
#include "cfon/verify.hpp"

using namespace cfon;

namespace {

Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

// subdivided K4 with a pendant hung on each branch vertex: the planar family
// whose partial conflict-free optimum is 4
Graph subdivided_k4_with_pendants() {
    Graph sk = generate_subdivided_clique(4);
    auto e = sk.edges();
    for (int i = 0; i < 4; ++i) e.emplace_back(i, 10 + i);
    return Graph::from_edges(14, e);
}

// apex 0, upper 5-cycle 1..5, lower 5-cycle 6..10, bottom 11; pentagonal
// antiprism in the middle; 12 vertices, 30 edges, 5-regular
Graph icosahedron() {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= 5; ++i) e.emplace_back(0, i);
    for (int i = 1; i <= 5; ++i) e.emplace_back(i, i == 5 ? 1 : i + 1);
    for (int i = 6; i <= 10; ++i) e.emplace_back(i, i == 10 ? 6 : i + 1);
    for (int i = 6; i <= 10; ++i) e.emplace_back(11, i);
    e.insert(e.end(), {{1, 6}, {1, 7}, {2, 7}, {2, 8}, {3, 8}, {3, 9}, {4, 9}, {4, 10}, {5, 10}, {5, 6}});
    return Graph::from_edges(12, e);
}

// independent re-verification of a pipeline output, on top of the library's
// internal audits
void check_pipeline(const Graph& g, const PlanarPartialResult& r) {
    Verdict vd = verify_partial_cfon(g, r.result);
    REQUIRE(vd.valid);
    CHECK(verify_witness(g, r.result, r.result.witness).valid);
    CHECK(r.result.colors_used() <= r.bound);
    CHECK(r.result.max_color() <= r.bound);
    for (int v : r.partition.v0) CHECK(r.result.color[v] == 1);
    for (int v : r.partition.v1) CHECK(r.result.color[v] >= 2);
    for (int v : r.partition.v2) CHECK(r.result.color[v] == 0);
    CHECK(static_cast<int>(r.partition.v1.size()) == r.contracted.n);
    CHECK(r.contracted.edge_count() <= g.edge_count());
}

} // namespace

TEST_CASE("maximal distance-3 sets follow the ascending greedy") {
    Graph p7 = generate_path(7);
    CHECK(maximal_distance3_set(p7, 0) == std::vector<int>{0, 3, 6});
    CHECK(maximal_distance3_set(p7, 3) == std::vector<int>{0, 3, 6});
    CHECK(maximal_distance3_set(p7, 6) == std::vector<int>{0, 3, 6});

    Graph c6 = generate_cycle(6);
    CHECK(maximal_distance3_set(c6, 0) == std::vector<int>{0, 3});

    // a star has diameter 2, so no second member ever qualifies
    Graph star = generate_star(6);
    CHECK(maximal_distance3_set(star, 0) == std::vector<int>{0});
    CHECK(maximal_distance3_set(star, 1) == std::vector<int>{1});

    CHECK(maximal_distance3_set(generate_path(2), 0) == std::vector<int>{0});

    CHECK_THROWS_AS(maximal_distance3_set(p7, -1), PreconditionError);
    CHECK_THROWS_AS(maximal_distance3_set(p7, 7), PreconditionError);
    Graph two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(maximal_distance3_set(two_edges, 0), PreconditionError);
}

TEST_CASE("distance-3 partitions on the worked examples") {
    Graph p5 = generate_path(5);
    Distance3Partition pp = make_distance3_partition(p5, 0);
    CHECK(pp.v0 == std::vector<int>{0, 3});
    CHECK(pp.v1 == std::vector<int>{1, 2, 4});
    CHECK(pp.v2.empty());
    CHECK(pp.f.at(0) == 1);
    CHECK(pp.f.at(3) == 2);

    Graph c5 = generate_cycle(5);
    Distance3Partition pc = make_distance3_partition(c5, 0);
    CHECK(pc.v0 == std::vector<int>{0});
    CHECK(pc.v1 == std::vector<int>{1, 4});
    CHECK(pc.v2 == std::vector<int>{2, 3});
    CHECK(pc.f.at(0) == 1);
    CHECK(pc.f.at(2) == 1);
    CHECK(pc.f.at(3) == 4);

    CHECK_THROWS_AS(make_distance3_partition(Graph::from_edges(1, {}), 0), PreconditionError);
}

TEST_CASE("partition validation rejects each broken invariant") {
    Graph p3 = generate_path(3);
    Distance3Partition ok;
    ok.v0 = {0};
    ok.v1 = {1};
    ok.v2 = {2};
    ok.f = {{0, 1}, {2, 1}};
    CHECK_NOTHROW(validate_distance3_partition(p3, ok));

    auto broken = [&](auto mutate) {
        Distance3Partition p = ok;
        mutate(p);
        CHECK_THROWS_AS(validate_distance3_partition(p3, p), PreconditionError);
    };
    broken([](Distance3Partition& p) { p.v1 = {0, 1}; });          // overlap
    broken([](Distance3Partition& p) { p.v2 = {}; });              // missing vertex
    broken([](Distance3Partition& p) { p.v2 = {5}; });             // out of range
    broken([](Distance3Partition& p) { p.f.erase(2); });           // f misses v2
    broken([](Distance3Partition& p) { p.f[1] = 1; });             // f covers a v1 vertex
    broken([](Distance3Partition& p) { p.f[2] = 2; });             // target outside v1
    broken([](Distance3Partition& p) {                             // v0 meets v2
        p.v0 = {0};
        p.v1 = {2};
        p.v2 = {1};
        p.f = {{0, 2}, {1, 2}};
    });

    // unsorted class listing
    Graph c5 = generate_cycle(5);
    Distance3Partition pc = make_distance3_partition(c5, 0);
    pc.v1 = {4, 1};
    CHECK_THROWS_AS(validate_distance3_partition(c5, pc), PreconditionError);

    // adjacent vertices inside v0
    Distance3Partition dep;
    dep.v0 = {0, 1};
    dep.v1 = {2};
    dep.v2 = {};
    dep.f = {{0, 2}, {1, 2}};
    CHECK_THROWS_AS(validate_distance3_partition(p3, dep), PreconditionError);

    // a v0 vertex with no neighbor at all
    Graph lonely = Graph::from_edges(3, {{1, 2}});
    Distance3Partition iso;
    iso.v0 = {0, 1};
    iso.v1 = {2};
    iso.v2 = {};
    iso.f = {{0, 2}, {1, 2}};
    CHECK_THROWS_AS(validate_distance3_partition(lonely, iso), PreconditionError);

    // a v1 vertex must see exactly one v0 vertex
    Graph p4 = generate_path(4);
    Distance3Partition two_anchors;
    two_anchors.v0 = {0, 2};
    two_anchors.v1 = {1, 3};
    two_anchors.v2 = {};
    two_anchors.f = {{0, 1}, {2, 1}};
    CHECK_THROWS_AS(validate_distance3_partition(p4, two_anchors), PreconditionError);
    Distance3Partition no_anchor;
    no_anchor.v0 = {0};
    no_anchor.v1 = {1, 3};
    no_anchor.v2 = {2};
    no_anchor.f = {{0, 1}, {2, 1}};
    CHECK_THROWS_AS(validate_distance3_partition(p4, no_anchor), PreconditionError);

    // f target in v1 but not adjacent
    Distance3Partition far_target = make_distance3_partition(c5, 0);
    far_target.f[3] = 1;
    CHECK_THROWS_AS(validate_distance3_partition(c5, far_target), PreconditionError);
}

TEST_CASE("contraction produces the expected minors") {
    Graph p5 = generate_path(5);
    Graph gp = build_contracted_graph(p5, make_distance3_partition(p5, 0));
    CHECK(gp.n == 3);
    CHECK(gp.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

    Graph c5 = generate_cycle(5);
    Graph gc = build_contracted_graph(c5, make_distance3_partition(c5, 0));
    CHECK(gc.n == 2);
    CHECK(gc.edges() == std::vector<std::pair<int, int>>{{0, 1}});

    Graph c6 = generate_cycle(6);
    Graph g6 = build_contracted_graph(c6, make_distance3_partition(c6, 0));
    CHECK(g6.n == 4);
    CHECK(g6.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});

    Graph k4 = complete(4);
    Graph gk = build_contracted_graph(k4, make_distance3_partition(k4, 0));
    CHECK(gk.n == 3);
    CHECK(gk.edge_count() == 3);

    // pendants contract into their only neighbor and add nothing: the result
    // is just the graph induced on v1
    Graph tri = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}});
    Distance3Partition pend;
    pend.v0 = {3, 4};
    pend.v1 = {0, 1};
    pend.v2 = {2};
    pend.f = {{3, 0}, {4, 1}, {2, 0}};
    Graph gt = build_contracted_graph(tri, pend);
    CHECK(gt.n == 2);
    CHECK(gt.edges() == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("proper coloring search is exact and budgeted") {
    Graph p3 = generate_path(3);
    ProperColoring r = proper_coloring(p3, 4);
    CHECK(r.status == ProperStatus::Success);
    CHECK(r.color == std::vector<int>{1, 2, 1});
    CHECK(r.nodes == 3);

    Graph k4 = complete(4);
    CHECK(proper_coloring(k4, 3).status == ProperStatus::Impossible);
    CHECK(proper_coloring(k4, 3).color == std::vector<int>(4, 0));
    ProperColoring rk = proper_coloring(k4, 4);
    CHECK(rk.status == ProperStatus::Success);
    CHECK(rk.color == std::vector<int>{1, 2, 3, 4});
    CHECK(proper_coloring(k4, 5).color == std::vector<int>{1, 2, 3, 4});

    ProperColoring rb = proper_coloring(k4, 3, 2);
    CHECK(rb.status == ProperStatus::BudgetExhausted);
    CHECK(rb.nodes == 3);
    CHECK(rb.color == std::vector<int>(4, 0));

    Graph c5 = generate_cycle(5);
    CHECK(proper_coloring(c5, 2).status == ProperStatus::Impossible);
    ProperColoring rc = proper_coloring(c5, 3);
    CHECK(rc.status == ProperStatus::Success);
    CHECK(rc.color == std::vector<int>{1, 2, 1, 2, 3});

    CHECK(proper_coloring(complete(1), 0).status == ProperStatus::Impossible);
    CHECK(proper_coloring(complete(1), 1).status == ProperStatus::Success);
    CHECK_THROWS_AS(proper_coloring(p3, -1), PreconditionError);
    CHECK_THROWS_AS(proper_coloring(p3, 2, 0), PreconditionError);
}

TEST_CASE("degree-five reduction colors planar graphs") {
    Graph c5 = generate_cycle(5);
    CHECK(proper_color_planar5(c5) == std::vector<int>{3, 2, 1, 2, 1});
    CHECK(proper_color_planar5(complete(4)) == std::vector<int>{4, 3, 2, 1});
    CHECK(proper_color_planar5(complete(5)) == std::vector<int>{5, 4, 3, 2, 1});

    Graph ico = icosahedron();
    std::vector<int> ci = proper_color_planar5(ico);
    for (int v = 0; v < ico.n; ++v) {
        CHECK(ci[v] >= 1);
        CHECK(ci[v] <= 5);
        for (int w : ico.adj[v]) CHECK(ci[v] != ci[w]);
    }
    CHECK(proper_color_planar5(ico) == ci); // deterministic

    // K6: every chain swap merely permutes two fully adjacent classes
    CHECK_THROWS_AS(proper_color_planar5(complete(6)), PreconditionError);
    // K7: the reduction cannot even shed a first vertex
    CHECK_THROWS_AS(proper_color_planar5(complete(7)), PreconditionError);
}

TEST_CASE("planar partial pipeline reproduces the worked traces") {
    Graph p5 = generate_path(5);
    PlanarPartialResult r5 = partial_cfon_planar(p5);
    check_pipeline(p5, r5);
    CHECK(r5.result.color == std::vector<int>{1, 2, 3, 1, 2});
    CHECK(r5.result.witness == std::vector<int>{2, 1, 1, 3, 1});
    CHECK(r5.result.colors_used() == 3);
    CHECK(r5.bound == 5);
    CHECK_FALSE(r5.fallback_used);

    Graph p3 = generate_path(3);
    PlanarPartialResult r3 = partial_cfon_planar(p3);
    check_pipeline(p3, r3);
    CHECK(r3.result.color == std::vector<int>{1, 2, 0});
    CHECK(r3.result.witness == std::vector<int>{2, 1, 2});

    Graph k2 = generate_path(2);
    PlanarPartialResult r2 = partial_cfon_planar(k2);
    check_pipeline(k2, r2);
    CHECK(r2.result.color == std::vector<int>{1, 2});

    Graph c6 = generate_cycle(6);
    PlanarPartialResult r6 = partial_cfon_planar(c6);
    check_pipeline(c6, r6);
    CHECK(r6.result.color == std::vector<int>{1, 2, 3, 1, 2, 3});

    Graph c5 = generate_cycle(5);
    PlanarPartialResult rc5 = partial_cfon_planar(c5);
    check_pipeline(c5, rc5);
    CHECK(rc5.result.color == std::vector<int>{1, 2, 0, 0, 3});
    CHECK(rc5.result.witness == std::vector<int>{2, 1, 2, 3, 1});
}

TEST_CASE("planar pipeline falls back to five colors when four cannot work") {
    // K6 is not planar; the exact 4-coloring of the contracted K5 is
    // impossible, and the pipeline reports the five-color fallback honestly
    Graph k6 = complete(6);
    PlanarPartialResult r = partial_cfon_planar(k6);
    check_pipeline(k6, r);
    CHECK(r.fallback_used);
    CHECK(r.bound == 6);
    CHECK(r.result.color == std::vector<int>{1, 6, 5, 4, 3, 2});
}

TEST_CASE("planar lower-bound family gets an optimal partial coloring") {
    Graph g = subdivided_k4_with_pendants();
    PlanarPartialResult r = partial_cfon_planar(g);
    check_pipeline(g, r);
    CHECK_FALSE(r.fallback_used);
    CHECK(r.result.colors_used() == 4);
    // independent optimum: no partial conflict-free coloring does better
    CHECK(exact_chi_on_partial(g, 14).k == 4);
}

TEST_CASE("outerplanar partial pipeline stays within four colors") {
    Graph c5 = generate_cycle(5);
    PlanarPartialResult r = partial_cfon_outerplanar(c5);
    check_pipeline(c5, r);
    CHECK(r.bound == 4);
    CHECK(r.result.color == std::vector<int>{1, 2, 0, 0, 3});

    // fan-triangulated hexagon
    Graph hex = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5},
                                      {0, 2}, {0, 3}, {0, 4}});
    PlanarPartialResult rh = partial_cfon_outerplanar(hex);
    check_pipeline(hex, rh);
    CHECK(rh.bound == 4);

    Graph p7 = generate_path(7);
    check_pipeline(p7, partial_cfon_outerplanar(p7));

    // the pipeline never tests outerplanarity itself: K4 contracts to a
    // 3-colorable triangle, so it succeeds with an all-distinct coloring
    Graph k4 = complete(4);
    PlanarPartialResult rk = partial_cfon_outerplanar(k4);
    check_pipeline(k4, rk);
    CHECK(rk.result.color == std::vector<int>{1, 2, 3, 4});

    // K5 contracts to K4, whose 3-coloring search proves impossibility
    CHECK_THROWS_AS(partial_cfon_outerplanar(complete(5)), PreconditionError);
}

TEST_CASE("pipelines reject disconnected or isolated inputs") {
    Graph two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(partial_cfon_planar(two_edges), PreconditionError);
    CHECK_THROWS_AS(partial_cfon_outerplanar(two_edges), PreconditionError);
    Graph lonely = Graph::from_edges(4, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(partial_cfon_planar(lonely), PreconditionError);
    Graph single = Graph::from_edges(1, {});
    CHECK_THROWS_AS(partial_cfon_planar(single), PreconditionError);
}

TEST_CASE("random outerplanar battery stays valid and within bounds") {
    for (int n = 5; n <= 14; ++n) {
        for (int seed = 1; seed <= 3; ++seed) {
            Graph g = generate_random_maximal_outerplanar(n, seed);
            PlanarPartialResult ro = partial_cfon_outerplanar(g);
            check_pipeline(g, ro);
            CHECK(ro.bound == 4);
            PlanarPartialResult rp = partial_cfon_planar(g);
            check_pipeline(g, rp);
            CHECK_FALSE(rp.fallback_used);
            if (n <= 9) {
                int best = exact_chi_on_partial(g).k;
                CHECK(best <= ro.result.colors_used());
            }
        }
    }
    for (int n = 2; n <= 10; ++n)
        for (int seed = 1; seed <= 2; ++seed) {
            Graph t = generate_random_tree(n, seed);
            check_pipeline(t, partial_cfon_outerplanar(t));
            check_pipeline(t, partial_cfon_planar(t));
        }
    for (int faces = 1; faces <= 4; ++faces) {
        Graph g = generate_pentagon_chain(faces);
        check_pipeline(g, partial_cfon_outerplanar(g));
        check_pipeline(g, partial_cfon_planar(g));
    }
}

TEST_CASE("planar pipeline is deterministic") {
    for (const Graph& g : {generate_cycle(6), subdivided_k4_with_pendants(),
                           generate_random_maximal_outerplanar(10, 7)}) {
        PlanarPartialResult a = partial_cfon_planar(g);
        PlanarPartialResult b = partial_cfon_planar(g);
        CHECK(a.result.color == b.result.color);
        CHECK(a.result.witness == b.result.witness);
        CHECK(a.partition.v0 == b.partition.v0);
    }
}
