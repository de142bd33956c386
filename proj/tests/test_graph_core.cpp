#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oddhom/families.hpp"
#include "oddhom/graph.hpp"
#include "oddhom/io.hpp"
#include "oracles.hpp"

using namespace oddhom;

TEST_CASE("make_graph basics") {
    graph c5 = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    REQUIRE(c5.order() == 5);
    REQUIRE(c5.edge_count() == 5);
    for (int v = 0; v < 5; ++v) CHECK(c5.degree(v) == 2);

    graph lone = make_graph(1, {});
    CHECK(lone.edge_count() == 0);

    graph k4 = complete_graph(4);
    REQUIRE(k4.edge_count() == 6);
    for (int v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);

    SECTION("duplicate edges collapse") {
        graph g = make_graph(3, {{0, 1}, {1, 0}, {0, 1}});
        CHECK(g.edge_count() == 1);
    }
    SECTION("rejections") {
        CHECK_THROWS_AS(make_graph(3, {{0, 3}}), graph_error);
        CHECK_THROWS_AS(make_graph(3, {{1, 1}}), graph_error);
        CHECK_THROWS_AS(make_graph(-1, {}), graph_error);
        CHECK_THROWS_AS(make_graph(10, {}, 5), graph_error);
    }
}

TEST_CASE("blow_up") {
    SECTION("K_2 with weight 2 gives C_4") {
        graph b = blow_up_uniform(complete_graph(2), 2);
        REQUIRE(b.order() == 4);
        REQUIRE(b.edge_count() == 4);
        CHECK(oracles::count_triangles(b) == 0);
        for (int v = 0; v < 4; ++v) CHECK(b.degree(v) == 2);
    }
    SECTION("weight 1 is the identity") {
        graph g = make_graph(6, {{0, 2}, {2, 4}, {1, 5}, {0, 5}});
        CHECK(blow_up_uniform(g, 1) == g);
    }
    SECTION("C_5 with weight 3: 15 vertices, 6-regular, triangle-free") {
        graph b = blow_up_uniform(cycle_graph(5), 3);
        REQUIRE(b.order() == 15);
        for (int v = 0; v < 15; ++v) CHECK(b.degree(v) == 6);
        CHECK(oracles::count_triangles(b) == 0);
    }
    SECTION("zero weight rejected") {
        CHECK_THROWS_AS(blow_up(complete_graph(2), {1, 0}), graph_error);
    }
    SECTION("uniform blow-up keeps the degree ratio") {
        graph g = cycle_graph(7);
        for (int c = 1; c <= 4; ++c)
            CHECK(min_degree_ratio(blow_up_uniform(g, c)) == min_degree_ratio(g));
    }
}

TEST_CASE("min_degree_ratio") {
    CHECK(min_degree_ratio(complete_graph(4)) == rational(3, 4));
    CHECK(min_degree_ratio(cycle_graph(5)) == rational(2, 5));
    CHECK_THROWS_AS(min_degree_ratio(graph(0, {})), graph_error);
}

TEST_CASE("rational arithmetic") {
    CHECK(rational(3, 12) == rational(1, 4));
    CHECK(rational(1, 3) + rational(1, 6) == rational(1, 2));
    CHECK(rational(1, 5) < rational(1, 4));
    CHECK(rational(-2, 4).str() == "-1/2");
    CHECK(rational(7, 2).floor() == 3);
    CHECK(rational(-7, 2).floor() == -4);
    CHECK(rational(7, 2).ceil() == 4);
    CHECK((rational(2) / rational(1, 5)).is_integer());
    CHECK(parse_rational("3/85") == rational(3, 85));
    CHECK_THROWS_AS(rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(parse_rational("x/y"), std::invalid_argument);
}

TEST_CASE("edge-list round trip") {
    graph c5 = cycle_graph(5);
    std::string text = encode_edgelist(c5);
    CHECK(text == "5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    CHECK(decode_edgelist(text) == c5);

    SECTION("canonical form from the format description") {
        graph g = decode_edgelist("5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
        CHECK(g == c5);
    }
    SECTION("parse errors carry offsets") {
        CHECK_THROWS_AS(decode_edgelist("abc"), parse_error);
        CHECK_THROWS_AS(decode_edgelist("3\n0"), parse_error);
        CHECK_THROWS_AS(decode_edgelist("3\n0 7"), parse_error);
        CHECK_THROWS_AS(decode_edgelist("3\n1 1"), parse_error);
    }
}

TEST_CASE("graph6 round trip") {
    SECTION("K_2 encodes to A_ per the format definition") {
        CHECK(encode_graph6(complete_graph(2)) == "A_");
        CHECK(decode_graph6("A_") == complete_graph(2));
    }
    SECTION("truncated header") {
        CHECK_THROWS_AS(decode_graph6(""), parse_error);
        CHECK_THROWS_AS(decode_graph6("D"), parse_error);  // promises 5 vertices, no bits
        try {
            decode_graph6("D");
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.byte_offset == 1);
        }
    }
    SECTION("random graphs round-trip in both formats") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 60; ++trial) {
            int n = static_cast<int>(rng() % 70);
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (rng() % 3 == 0) edges.emplace_back(i, j);
            graph g(n, edges);
            CHECK(decode_graph6(encode_graph6(g)) == g);
            CHECK(decode_edgelist(encode_edgelist(g)) == g);
        }
    }
    SECTION("n > 62 uses the long size field") {
        graph g = cycle_graph(80);
        std::string enc = encode_graph6(g);
        CHECK(static_cast<unsigned char>(enc[0]) == 126);
        CHECK(decode_graph6(enc) == g);
    }
    SECTION("trailing garbage rejected") {
        std::string enc = encode_graph6(cycle_graph(5));
        CHECK_THROWS_AS(decode_graph6(enc + "??"), parse_error);
    }
}

TEST_CASE("walk validity") {
    graph c5 = cycle_graph(5);
    walk w{{0, 1, 2, 3}};
    CHECK(w.valid_in(c5));
    CHECK(w.length() == 3);
    CHECK(w.is_path());
    walk bad{{0, 2}};
    CHECK_FALSE(bad.valid_in(c5));
    walk rep{{0, 1, 0}};
    CHECK(rep.valid_in(c5));
    CHECK_FALSE(rep.is_path());
}
