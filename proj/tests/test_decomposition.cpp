#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "pathdec/decomposition.hpp"
#include "test_util.hpp"

using namespace pathdec;
using testutil::path_graph;
using testutil::spider;

namespace {

PathDecomposition bags(int n, std::vector<std::vector<int>> bs) {
    PathDecomposition p;
    for (auto& b : bs) {
        VertexSet s(n);
        for (int v : b) s.set(v);
        p.bags.push_back(s);
    }
    return p;
}

}  // namespace

TEST_CASE("metrics") {
    PathDecomposition empty;
    CHECK(empty.length() == 0);
    CHECK(empty.width() == -1);
    CHECK(empty.size() == 0);

    auto p = bags(4, {{0, 1}, {1, 2, 3}});
    CHECK(p.length() == 2);
    CHECK(p.width() == 2);
    CHECK(p.size() == 5);
}

TEST_CASE("validation axioms in order") {
    Graph g = path_graph(4);
    CHECK(is_valid(g, bags(4, {{0, 1}, {1, 2}, {2, 3}})));
    CHECK(is_valid(g, bags(4, {{0, 1}, {1, 2}, {1, 2}, {2, 3}})));  // repeats allowed

    auto v1 = validate(g, bags(4, {{0, 1}, {1, 2}}));
    REQUIRE(v1);
    CHECK(v1->axiom == Axiom::vertices_covered);
    CHECK(v1->vertex == 3);

    auto v2 = validate(g, bags(4, {{0, 1}, {2}, {2, 3}}));
    REQUIRE(v2);
    CHECK(v2->axiom == Axiom::edges_covered);
    CHECK(v2->edge == std::pair<int, int>(1, 2));

    auto v3 = validate(g, bags(4, {{0, 1}, {1, 2}, {2, 3}, {1, 3}}));
    REQUIRE(v3);
    CHECK(v3->axiom == Axiom::contiguity);
    CHECK(v3->vertex == 1);
    CHECK(v3->bag == 2);  // the gap bag inside vertex 1's run

    // missing vertex is reported before the edge it would carry
    auto v4 = validate(g, bags(4, {{0}, {2}, {2, 3}}));
    REQUIRE(v4);
    CHECK(v4->axiom == Axiom::vertices_covered);
    CHECK(v4->vertex == 1);
}

TEST_CASE("contiguity equals the triple form of axiom 3") {
    // On an edgeless graph only axiom 3 can fail; compare against the
    // formulation "i<j<k implies bag_i intersect bag_k inside bag_j".
    std::mt19937 rng(7101);
    Graph g0 = Graph::from_edges(5, {});
    for (int iter = 0; iter < 500; ++iter) {
        PathDecomposition p;
        int len = 1 + int(rng() % 4);
        bool covers_all = true;
        for (int i = 0; i < len; ++i) {
            VertexSet b(5);
            for (int v = 0; v < 5; ++v)
                if (rng() % 2) b.set(v);
            p.bags.push_back(b);
        }
        VertexSet span = p.span(5);
        for (int v = 0; v < 5; ++v)
            if (!span.test(v)) covers_all = false;
        if (!covers_all) continue;

        bool triple_ok = true;
        for (int i = 0; i < len && triple_ok; ++i)
            for (int j = i + 1; j < len && triple_ok; ++j)
                for (int k = j + 1; k < len && triple_ok; ++k)
                    if (!p.bags[j].contains(p.bags[i] & p.bags[k])) triple_ok = false;
        CHECK(triple_ok == is_valid(g0, p));
    }
}

TEST_CASE("span and frontier of a prefix") {
    Graph g = path_graph(5);
    auto p = bags(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto sf = span_and_frontier(g, p, 2);
    REQUIRE(sf);
    CHECK(sf->span.members() == std::vector<int>{0, 1, 2});
    CHECK(sf->frontier.members() == std::vector<int>{2});

    auto whole = span_and_frontier(g, p, 4);
    REQUIRE(whole);
    CHECK(whole->frontier.empty());

    // prefix that breaks contiguity over its own span is rejected
    auto bad = bags(5, {{0, 1}, {2, 3}, {1, 2}});
    CHECK(!span_and_frontier(g, bad, 3));
}

TEST_CASE("reverse and concat") {
    Graph g = path_graph(3);
    auto p = bags(3, {{0, 1}, {1, 2}});
    auto r = reverse(p);
    CHECK(r.bags[0].members() == std::vector<int>{1, 2});
    CHECK(is_valid(g, r));

    // disjoint paths 0-1-2 and 3-4-5 inside one 6-vertex graph
    Graph two = Graph::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    auto a = bags(6, {{0, 1}, {1, 2}});
    auto b = bags(6, {{3, 4}, {4, 5}});
    auto joined = concat(a, b);
    CHECK(joined.length() == 3);  // small boundary bags fuse
    CHECK(joined.bags[1].members() == std::vector<int>{1, 2, 3, 4});
    CHECK(is_valid(two, joined));
    CHECK(concat(a, b, false).length() == 4);

    auto big = bags(6, {{0, 1, 2}});
    CHECK(concat(big, b).length() == 3);  // big boundary bag never fuses
    CHECK(concat(a, PathDecomposition{}).length() == 2);
    CHECK(concat(PathDecomposition{}, b).length() == 2);
}

TEST_CASE("boundary types") {
    CHECK(classify_type(bags(9, {{0, 1}, {1, 2}})) == DecompositionType::A);
    CHECK(classify_type(bags(9, {{0, 1}, {1, 2, 3}})) == DecompositionType::B1);
    CHECK(classify_type(bags(9, {{0, 1, 2}, {2, 3}})) == DecompositionType::B2);
    CHECK(classify_type(bags(9, {{0, 1, 2}, {2, 3, 4}})) == DecompositionType::C);
    CHECK(classify_type(PathDecomposition{}) == DecompositionType::A);
    // reversal swaps the two one-sided types
    auto p = bags(9, {{0, 1}, {1, 2, 3}});
    CHECK(classify_type(reverse(p)) == DecompositionType::B2);
}

TEST_CASE("first and last bag touching a set") {
    auto p = bags(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(alpha_beta(p, VertexSet::of(6, {2})) == std::pair<int, int>(1, 2));
    CHECK(alpha_beta(p, VertexSet::of(6, {0, 4})) == std::pair<int, int>(0, 3));
    CHECK(!alpha_beta(p, VertexSet::of(6, {5})));
}

TEST_CASE("separator interval on the 13-leg spider") {
    Graph g = spider(13, 2);  // center 0, legs {2i+1, 2i+2}
    VertexSet s = VertexSet::of(27, {0});
    REQUIRE(is_bottleneck(g, s));

    // natural sweep: one bag per leg, center everywhere
    std::vector<std::vector<int>> bs;
    for (int i = 0; i < 13; ++i) bs.push_back({0, 2 * i + 1, 2 * i + 2});
    auto p = bags(27, bs);
    REQUIRE(is_valid(g, p));
    auto t = bottleneck_interval(g, p, s);
    REQUIRE(t);
    CHECK(*t == std::pair<int, int>(1, 11));

    auto colors = color_branches(g, p, s);
    REQUIRE(colors);
    CHECK((*colors)[0] == BranchColor::gray);
    CHECK((*colors)[12] == BranchColor::black);
    for (int i = 1; i < 12; ++i) CHECK((*colors)[i] == BranchColor::green);
}

TEST_CASE("red and blue branches") {
    Graph g = spider(13, 2);
    // leg 0 = {1,2} starts before the separator straddle and ends inside
    std::vector<std::vector<int>> bs = {{1, 2}, {0, 1}, {0, 1, 3}, {0, 3, 4}};
    for (int i = 2; i < 13; ++i) bs.push_back({0, 2 * i + 1, 2 * i + 2});
    auto p = bags(27, bs);
    REQUIRE(is_valid(g, p));
    VertexSet s = VertexSet::of(27, {0});
    auto t = bottleneck_interval(g, p, s);
    REQUIRE(t);
    CHECK(*t == std::pair<int, int>(2, 13));
    auto colors = color_branches(g, p, s);
    REQUIRE(colors);
    CHECK((*colors)[0] == BranchColor::red);
    CHECK((*colors)[12] == BranchColor::black);
    for (int i = 1; i < 12; ++i) CHECK((*colors)[i] == BranchColor::green);

    // mirrored decomposition mirrors the colors
    auto rcolors = color_branches(g, reverse(p), s);
    REQUIRE(rcolors);
    CHECK((*rcolors)[0] == BranchColor::blue);
    CHECK((*rcolors)[12] == BranchColor::gray);
}

TEST_CASE("purple branch spans the whole interval") {
    Graph g = spider(13, 2);
    std::vector<std::vector<int>> bs = {{1, 2}, {0, 1}};
    for (int i = 1; i < 13; ++i) bs.push_back({0, 1, 2 * i + 1, 2 * i + 2});
    bs.push_back({0, 1});
    auto p = bags(27, bs);
    REQUIRE(is_valid(g, p));
    VertexSet s = VertexSet::of(27, {0});
    auto t = bottleneck_interval(g, p, s);
    REQUIRE(t);
    CHECK(*t == std::pair<int, int>(2, 13));
    auto colors = color_branches(g, p, s);
    REQUIRE(colors);
    CHECK((*colors)[0] == BranchColor::purple);
    for (int i = 1; i < 13; ++i) CHECK((*colors)[i] == BranchColor::green);
}

TEST_CASE("interval undefined without a straddling branch") {
    Graph g = spider(13, 2);
    std::vector<std::vector<int>> bs;
    bs.push_back({0, 1, 2});
    for (int i = 1; i < 13; ++i) bs.push_back({0, 2 * i + 1, 2 * i + 2});
    // drop the center from every other bag except runs: center only in bag 0
    auto p = bags(27, {{1, 2}});
    CHECK(!bottleneck_interval(g, p, VertexSet::of(27, {0})));
}

TEST_CASE("redundant bag removal") {
    auto p = bags(5, {{0, 1}, {1, 2}, {1, 2}, {2, 3}, {3}, {3, 4}});
    auto q = remove_redundant_bags(p);
    CHECK(q.length() == 4);
    CHECK(is_valid(path_graph(5), q));
    // a decomposition may collapse entirely
    CHECK(remove_redundant_bags(bags(2, {{0, 1}, {0, 1}})).length() == 1);
}

TEST_CASE("decomposition files round-trip") {
    auto p = bags(5, {{0, 1}, {1, 2, 4}});
    std::ostringstream out;
    write_decomposition(out, p);
    CHECK(out.str() == "0 1\n1 2 4\n");
    std::istringstream in(out.str());
    CHECK(parse_decomposition(in, 5).bags == p.bags);

    std::istringstream empty("");
    CHECK(parse_decomposition(empty, 5).length() == 0);
    std::istringstream bad("0 9\n");
    CHECK_THROWS(parse_decomposition(bad, 5));
}
