#include <doctest.h>

#include "cfon/decomposition.hpp"
#include "cfon/errors.hpp"
#include "cfon/generators.hpp"

using namespace cfon;

namespace {
PathDecomposition pd(std::vector<std::vector<int>> bags) {
    PathDecomposition p;
    p.bags = std::move(bags);
    return p;
}
} // namespace

TEST_CASE("validator on the three axioms") {
    Graph p3 = generate_path(3);
    PdVerdict ok = validate_path_decomposition(p3, pd({{0, 1}, {1, 2}}));
    CHECK(ok.valid);
    CHECK(ok.width == 1);

    PdVerdict uncovered = validate_path_decomposition(p3, pd({{0, 1}, {2}}));
    CHECK_FALSE(uncovered.valid);
    REQUIRE(uncovered.violations.size() == 1);
    CHECK(uncovered.violations[0].find("edge {2,3}") != std::string::npos);

    Graph k2 = generate_path(2);
    PdVerdict gap = validate_path_decomposition(k2, pd({{0}, {1}, {0, 1}}));
    CHECK_FALSE(gap.valid);
    CHECK(gap.violations[0].find("vertex 1") != std::string::npos);

    PdVerdict missing = validate_path_decomposition(p3, pd({{0, 1}}));
    CHECK_FALSE(missing.valid);
}

TEST_CASE("nice normalization") {
    Graph p3 = generate_path(3);
    PathDecomposition nice = make_nice(p3, pd({{0, 1}, {1, 2}}));
    REQUIRE(nice.bags.size() == 7);
    CHECK(nice.bags.front().empty());
    CHECK(nice.bags.back().empty());
    CHECK(nice.width() == 1);
    CHECK(validate_path_decomposition(p3, nice).valid);
    CHECK(nice.bags == std::vector<std::vector<int>>{{}, {0}, {0, 1}, {1}, {1, 2}, {2}, {}});

    Graph k2 = generate_path(2);
    PathDecomposition n2 = make_nice(k2, pd({{0, 1}}));
    CHECK(n2.bags == std::vector<std::vector<int>>{{}, {0}, {0, 1}, {1}, {}});

    // idempotence up to event order
    PathDecomposition again = make_nice(p3, nice);
    CHECK(again.bags == nice.bags);

    CHECK_THROWS_AS(make_nice(p3, pd({{0, 1}})), PreconditionError);
}

TEST_CASE("semi-nice fix-up on a single edge fuses the pair") {
    Graph k2 = generate_path(2);
    PathDecomposition nice = make_nice(k2, pd({{0, 1}}));
    SemiNicePathDecomposition sn = make_semi_nice(k2, nice);
    REQUIRE(sn.bags.size() == 4);
    CHECK(sn.bags[0].kind == SnKind::Empty);
    CHECK(sn.bags[1].kind == SnKind::Special);
    CHECK(sn.bags[1].bag == std::vector<int>{0, 1});
    CHECK(sn.bags[1].v == 0);
    CHECK(sn.bags[1].vhat == 1);
    CHECK(sn.bags[2].kind == SnKind::Forget);
    CHECK(sn.bags[2].v == 0);
    CHECK(sn.bags[3].kind == SnKind::Forget);
    CHECK(sn.bags[3].v == 1);
    CHECK(sn.bags[3].bag.empty());
    CHECK(validate_semi_nice(k2, sn).valid);
}

TEST_CASE("center-first path introduction needs one fusion") {
    // bag {2} introduces the center before any neighbor exists; the repair
    // fuses it with the next introduce into a special bag
    Graph p3 = generate_path(3);
    PathDecomposition nice = pd({{}, {1}, {0, 1}, {1}, {1, 2}, {2}, {}});
    SemiNicePathDecomposition sn = make_semi_nice(p3, nice);
    CHECK(validate_semi_nice(p3, sn).valid);
    CHECK(sn.width() <= 1);
    // one violation, one fusion: bag count drops by one
    CHECK(sn.bags.size() == 6);
}

TEST_CASE("star introduced leaf-first gets repaired") {
    Graph star = generate_star(4);
    // leaves 2,3,4 first, center 1 last
    PathDecomposition in = pd({{1}, {1, 2}, {1, 2, 3}, {0, 1, 2, 3}});
    PathDecomposition nice = make_nice(star, in);
    SemiNicePathDecomposition sn = make_semi_nice(star, nice);
    PdVerdict v = validate_semi_nice(star, sn);
    CHECK(v.valid);
    CHECK(sn.width() <= in.width());
    // center-first order still repairs the very first introduce
    PathDecomposition cf = make_nice(star, pd({{0, 1}, {0, 2}, {0, 3}}));
    SemiNicePathDecomposition sn2 = make_semi_nice(star, cf);
    CHECK(validate_semi_nice(star, sn2).valid);
    CHECK(sn2.bags.size() == cf.bags.size() - 1);
}

TEST_CASE("triangle introduced ascending fuses the first pair") {
    Graph k3 = generate_cycle(3);
    PathDecomposition nice = make_nice(k3, pd({{0, 1, 2}}));
    SemiNicePathDecomposition sn = make_semi_nice(k3, nice);
    CHECK(validate_semi_nice(k3, sn).valid);
    CHECK(sn.width() == 2);
}

TEST_CASE("semi-nice over random trees and cycles") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        Graph t = generate_random_tree(9, seed);
        PathDecomposition opt = pathwidth_exact_small(t);
        SemiNicePathDecomposition sn = make_semi_nice(t, make_nice(t, opt));
        CHECK(validate_semi_nice(t, sn).valid);
        CHECK(sn.width() <= opt.width());
    }
    for (int n = 3; n <= 9; ++n) {
        Graph c = generate_cycle(n);
        PathDecomposition opt = pathwidth_exact_small(c);
        SemiNicePathDecomposition sn = make_semi_nice(c, make_nice(c, opt));
        CHECK(validate_semi_nice(c, sn).valid);
        CHECK(sn.width() <= opt.width());
    }
}

TEST_CASE("exact pathwidth on known families") {
    CHECK(pathwidth_exact_small(generate_path(5)).width() == 1);
    CHECK(pathwidth_exact_small(generate_cycle(5)).width() == 2);
    Graph k4 = parse_edge_list("1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    CHECK(pathwidth_exact_small(k4).width() == 3);
    Graph p1 = parse_edge_list("p edge 1 0\n");
    CHECK(pathwidth_exact_small(p1).width() == 0);
    CHECK_THROWS_AS(pathwidth_exact_small(generate_path(13)), CapError);
    CHECK(pathwidth_exact_small(generate_path(14), 14).width() == 1);
}

TEST_CASE("exact pathwidth output always validates") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        Graph t = generate_random_maximal_outerplanar(9, seed);
        PathDecomposition p = pathwidth_exact_small(t);
        CHECK(validate_path_decomposition(t, p).valid);
        CHECK(p.width() >= 2);
    }
}

TEST_CASE("decomposition text round-trip") {
    Graph p3 = generate_path(3);
    PathDecomposition p = pd({{0, 1}, {1, 2}});
    std::string s = serialize_path_decomposition(p);
    CHECK(s == "s pd 2 2 3\nb 1 1 2\nb 2 2 3\n");
    PathDecomposition back = parse_path_decomposition(s);
    CHECK(back.bags == p.bags);

    SemiNicePathDecomposition sn = make_semi_nice(p3, make_nice(p3, p));
    std::string t = serialize_semi_nice(sn);
    SemiNicePathDecomposition snb = parse_semi_nice(t);
    CHECK(serialize_semi_nice(snb) == t);
    CHECK(validate_semi_nice(p3, snb).valid);

    CHECK_THROWS_AS(parse_path_decomposition("b 1 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_path_decomposition("s pd 2 2 3\nb 2 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_path_decomposition("s pd 1 2 3\nb 1 2 1\n"), ParseError);
    CHECK_THROWS_AS(parse_path_decomposition("s pd 1 1 2\nb 1 1 1\n"), ParseError);
}
