#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oddhom/cycle_analysis.hpp"
#include "oddhom/families.hpp"
#include "oracles.hpp"

using namespace oddhom;

namespace {

graph random_graph(std::mt19937_64& rng, int n, int denom) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (static_cast<int>(rng() % denom) == 0) edges.emplace_back(i, j);
    return graph(n, edges);
}

} // namespace

TEST_CASE("parity distances on small motifs") {
    SECTION("C_5 arcs") {
        parity_distance_table t(cycle_graph(5));
        CHECK(t.even(0, 2) == 2);
        CHECK(t.odd(0, 2) == 3);
        CHECK(t.even(0, 0) == 0);
        CHECK(t.odd(0, 0) == 5);
    }
    SECTION("K_2 alternates forever") {
        parity_distance_table t(complete_graph(2));
        CHECK(t.odd(0, 1) == 1);
        CHECK(t.even(0, 1) == unreachable);
        CHECK(t.odd(0, 0) == unreachable);
    }
    SECTION("bipartite same-side pairs have no odd walk") {
        parity_distance_table t(complete_bipartite(3, 4));
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) CHECK(t.odd(u, v) == unreachable);
        CHECK(t.odd(0, 3) == 1);
    }
}

TEST_CASE("parity distances agree with exhaustive walk enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        graph g = random_graph(rng, n, 2);
        parity_distance_table t(g);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                auto [even, odd] = oracles::brute_force_parity_distances(g, u, v, 2 * n);
                CAPTURE(n, u, v);
                CHECK(t.even(u, v) == even);
                CHECK(t.odd(u, v) == odd);
            }
    }
}

TEST_CASE("parity triangle inequality") {
    std::mt19937_64 rng(12);
    graph g = random_graph(rng, 9, 3);
    parity_distance_table t(g);
    for (int u = 0; u < 9; ++u)
        for (int v = 0; v < 9; ++v)
            for (int w = 0; w < 9; ++w)
                for (int q = 0; q <= 1; ++q)
                    for (int r = 0; r <= 1; ++r) {
                        int a = t.dist(u, v, q), b = t.dist(v, w, r);
                        if (a == unreachable || b == unreachable) continue;
                        int c = t.dist(u, w, (q + r) & 1);
                        REQUIRE(c != unreachable);
                        REQUIRE(c <= a + b);
                    }
}

TEST_CASE("odd girth") {
    CHECK(odd_girth(complete_graph(4)) == 3);
    CHECK(odd_girth(cycle_graph(4)) == infinite_length);
    CHECK(odd_girth(cycle_graph(9)) == 9);
    CHECK(odd_girth(complete_bipartite(4, 4)) == infinite_length);

    SECTION("agrees with exhaustive cycle enumeration") {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 30; ++trial) {
            graph g = random_graph(rng, 3 + static_cast<int>(rng() % 8), 3);
            CHECK(odd_girth(g) == oracles::brute_force_odd_girth(g));
        }
    }
}

TEST_CASE("contains_cycle") {
    SECTION("C_7 contains itself") {
        auto r = contains_cycle(cycle_graph(7), 7);
        REQUIRE(r.found());
        CHECK(is_cycle_of(cycle_graph(7), *r.witness));
    }
    SECTION("doubled C_5 still has a 5-cycle") {
        graph b = blow_up_uniform(cycle_graph(5), 2);
        auto r = contains_cycle(b, 5);
        REQUIRE(r.found());
        CHECK(r.witness->size() == 5);
        CHECK(is_cycle_of(b, *r.witness));
    }
    SECTION("certified none vs exhaustive enumeration") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 25; ++trial) {
            graph g = random_graph(rng, 4 + static_cast<int>(rng() % 6), 3);
            auto cycles = oracles::enumerate_cycles(g);
            for (int len = 3; len <= g.order(); ++len) {
                bool expect = false;
                for (const auto& c : cycles)
                    if (static_cast<int>(c.size()) == len) expect = true;
                auto r = contains_cycle(g, len);
                CAPTURE(g.order(), len);
                REQUIRE(r.status != search_status::aborted);
                CHECK(r.found() == expect);
                if (r.found()) CHECK(is_cycle_of(g, *r.witness));
            }
        }
    }
    SECTION("odd girth consistency on random graphs") {
        std::mt19937_64 rng(19);
        for (int trial = 0; trial < 20; ++trial) {
            graph g = random_graph(rng, 5 + static_cast<int>(rng() % 10), 3);
            int og = odd_girth(g);
            int first_found = infinite_length;
            for (int len = 3; len <= g.order(); len += 2)
                if (contains_cycle(g, len).found()) {
                    first_found = len;
                    break;
                }
            CHECK(og == first_found);
        }
    }
    SECTION("budget abort is loud") {
        graph big = complete_bipartite(12, 12);
        node_budget tiny(5);
        auto r = contains_cycle(big, 8, tiny);
        CHECK(r.status == search_status::aborted);
    }
}

TEST_CASE("cycle_through_pair") {
    graph c7 = cycle_graph(7);
    parity_distance_table t(c7);
    node_budget b;
    auto r = cycle_through_pair(c7, 7, 0, 3, b, t);
    REQUIRE(r.found());
    graph c8 = cycle_graph(8);
    parity_distance_table t8(c8);
    node_budget b8;
    CHECK(cycle_through_pair(c8, 8, 0, 3, b8, t8).found());
    node_budget b8b;
    CHECK(cycle_through_pair(c8, 6, 0, 3, b8b, t8).certified_none());
}

TEST_CASE("contains_d") {
    // two triangles joined by a path of length 4
    std::vector<std::pair<int, int>> d3_edges = {{0, 1}, {1, 2}, {2, 0},
                                                 {3, 4}, {4, 5}, {5, 3},
                                                 {0, 6}, {6, 7}, {7, 8}, {8, 3}};
    SECTION("explicit D_3 is found") {
        graph g(9, d3_edges);
        auto r = contains_d(g, 3);
        REQUIRE(r.found());
        CHECK(r.witness->valid_in(g));
    }
    SECTION("pendant edge is ignored") {
        auto edges = d3_edges;
        edges.emplace_back(4, 9);
        graph g(10, edges);
        auto r = contains_d(g, 3);
        REQUIRE(r.found());
        CHECK(r.witness->valid_in(g));
    }
    SECTION("C_11 is too small a host") {
        CHECK(contains_d(cycle_graph(11), 11).certified_none());
    }
    SECTION("missing joint certifies none") {
        auto edges = d3_edges;
        edges.erase(edges.begin() + 7);  // drop 6-7: the joining path is broken
        graph g(9, edges);
        CHECK(contains_d(g, 3).certified_none());
    }
    SECTION("even or tiny lengths rejected") {
        CHECK_THROWS_AS(contains_d(complete_graph(4), 4), std::invalid_argument);
        CHECK_THROWS_AS(contains_d(complete_graph(4), 1), std::invalid_argument);
    }
}

TEST_CASE("find_path_on_vertices") {
    CHECK(find_path_on_vertices(cycle_graph(5), 5).found());
    CHECK(find_path_on_vertices(complete_bipartite(1, 3), 4).certified_none());

    SECTION("Erdos-Gallai style witnesses at random") {
        std::mt19937_64 rng(23);
        int found_instances = 0;
        for (int trial = 0; trial < 60; ++trial) {
            int n = 10;
            int t = 2 + static_cast<int>(rng() % 5);
            graph g = random_graph(rng, n, 2);
            if (2 * g.edge_count() < static_cast<long long>(t) * n) continue;
            ++found_instances;
            auto r = find_path_on_vertices(g, t + 1);
            CAPTURE(t, g.edge_count());
            CHECK(r.found());
            if (r.found()) {
                walk w{*r.witness};
                CHECK(w.valid_in(g));
                CHECK(w.is_path());
                CHECK(static_cast<int>(r.witness->size()) == t + 1);
            }
        }
        REQUIRE(found_instances > 10);
    }
}

TEST_CASE("find_even_path_bipartite") {
    node_budget b;
    SECTION("complete bipartite 3+3 has an even path of length 4") {
        graph g = complete_bipartite(3, 3);
        auto r = find_even_path_bipartite(g, {0, 1, 2}, {3, 4, 5}, 4, b);
        REQUIRE(r.found());
        CHECK(r.witness->size() == 5);
        CHECK(r.witness->front() < 3);
        CHECK(r.witness->back() < 3);
    }
    SECTION("single edge has none of length 2") {
        graph g = complete_bipartite(1, 1);
        CHECK(find_even_path_bipartite(g, {0}, {1}, 2, b).certified_none());
    }
    SECTION("non-crossing edges rejected") {
        graph g = complete_graph(3);
        CHECK_THROWS_AS(find_even_path_bipartite(g, {0, 1}, {2}, 2, b),
                        std::invalid_argument);
    }
    SECTION("dense random bipartite graphs contain the guaranteed even path") {
        // e(A,B) > (|A|+|B|) t with |A| >= |B| >= t is only satisfiable at
        // n <= 14 for t = 2
        std::mt19937_64 rng(29);
        int instances = 0;
        for (int trial = 0; trial < 400 && instances < 12; ++trial) {
            int t = 2;
            int a = 5 + static_cast<int>(rng() % 5);
            int bb = 3 + static_cast<int>(rng() % 3);
            if (bb > a) std::swap(a, bb);
            if (a + bb > 14) continue;
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < bb; ++j)
                    if (rng() % 8 != 0) edges.emplace_back(i, a + j);
            graph g(a + bb, edges);
            if (g.edge_count() <= static_cast<long long>(a + bb) * t) continue;
            ++instances;
            std::vector<int> a_side(a), b_side(bb);
            for (int i = 0; i < a; ++i) a_side[i] = i;
            for (int j = 0; j < bb; ++j) b_side[j] = a + j;
            node_budget bud;
            auto r = find_even_path_bipartite(g, a_side, b_side, t, bud);
            CAPTURE(a, bb, t, g.edge_count());
            CHECK(r.found());
        }
        REQUIRE(instances >= 8);
    }
}

TEST_CASE("decompose_walk") {
    SECTION("an odd path comes back unchanged") {
        graph c5 = cycle_graph(5);
        walk w{{0, 1, 2, 3}};
        auto d = decompose_walk(c5, w);
        REQUIRE(d.is_path);
        CHECK(d.path == w.vertices);
    }
    SECTION("walk 0,1,2,0,1,3 in K_4 yields the odd triangle") {
        graph k4 = complete_graph(4);
        walk w{{0, 1, 2, 0, 1, 3}};
        auto d = decompose_walk(k4, w);
        REQUIRE_FALSE(d.is_path);
        CHECK(d.cycle == std::vector<int>{0, 1, 2});
        CHECK(d.cycle_positions == std::vector<int>{0, 1, 2, 3});
    }
    SECTION("only even loops leaves an odd endpoint path") {
        // C_6 plus a chord: wrap the even 4-loop, then step off it
        graph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}});
        walk w{{0, 1, 2, 3, 0, 5}};
        auto d = decompose_walk(g, w);
        REQUIRE(d.is_path);
        CHECK(d.path.front() == 0);
        CHECK(d.path.back() == 5);
        CHECK(d.path.size() % 2 == 0);  // odd edge count
        CHECK(oracles::uses_only_walk_edges(d.path, w.vertices));
    }
    SECTION("rejections") {
        graph c5 = cycle_graph(5);
        CHECK_THROWS_AS(decompose_walk(c5, walk{{0, 1, 2}}), std::invalid_argument);
        CHECK_THROWS_AS(decompose_walk(c5, walk{{0, 2, 4}}), std::invalid_argument);
        CHECK_THROWS_AS(decompose_walk(cycle_graph(3), walk{{0, 1, 2, 0}}),
                        std::invalid_argument);
    }
    SECTION("soundness on random odd walks") {
        std::mt19937_64 rng(31);
        int produced = 0;
        while (produced < 500) {
            int n = 4 + static_cast<int>(rng() % 7);
            graph g = random_graph(rng, n, 2);
            if (g.edge_count() == 0) continue;
            int start = static_cast<int>(rng() % n);
            if (g.degree(start) == 0) continue;
            std::vector<int> vs{start};
            int len = 3 + 2 * static_cast<int>(rng() % 4);
            for (int i = 0; i < len; ++i) {
                auto nb = g.neighbors(vs.back()).to_vector();
                vs.push_back(nb[rng() % nb.size()]);
            }
            if (vs.front() == vs.back()) continue;
            ++produced;
            walk w{vs};
            auto d = decompose_walk(g, w);
            if (d.is_path) {
                walk p{d.path};
                REQUIRE(p.valid_in(g));
                REQUIRE(p.is_path());
                REQUIRE(p.length() % 2 == 1);
                REQUIRE(p.vertices.front() == vs.front());
                REQUIRE(p.vertices.back() == vs.back());
                REQUIRE(oracles::uses_only_walk_edges(d.path, vs));
            } else {
                REQUIRE(d.cycle.size() % 2 == 1);
                REQUIRE(is_cycle_of(g, d.cycle));
                REQUIRE(d.cycle_positions.size() == d.cycle.size() + 1);
                for (size_t i = 0; i + 1 < d.cycle_positions.size(); ++i)
                    REQUIRE(d.cycle_positions[i] < d.cycle_positions[i + 1]);
                for (size_t i = 0; i < d.cycle.size(); ++i)
                    REQUIRE(vs[d.cycle_positions[i]] == d.cycle[i]);
                REQUIRE(vs[d.cycle_positions.back()] == d.cycle.front());
                REQUIRE(oracles::uses_only_walk_edges(d.cycle, vs));
            }
        }
    }
}

TEST_CASE("check_lemma_n") {
    SECTION("C_7 with force: tiny common neighbourhoods") {
        lemma_n_options opt;
        opt.force = true;
        auto rep = check_lemma_n(cycle_graph(7), 3, rational(3, 35), opt);
        bool density = false, common = false;
        for (const auto& c : rep.checks) {
            if (c.name == "subset-density") density = c.status == check_status::pass;
            if (c.name == "common-neighbours") common = c.status == check_status::pass;
        }
        CHECK(density);
        CHECK(common);
    }
    SECTION("K_4 fails preconditions and skips without force") {
        auto rep = check_lemma_n(complete_graph(4), 3, rational(1, 10));
        CHECK_FALSE(rep.all_pass());
        bool skipped = false;
        for (const auto& c : rep.checks)
            if (c.name == "main/skipped") skipped = true;
        CHECK(skipped);
    }
    SECTION("a density violation is caught") {
        // in K_9 with k=2 any 5 neighbours of a vertex already carry d(M) >= 4
        lemma_n_options opt;
        opt.force = true;
        auto rep = check_lemma_n(complete_graph(9), 2, rational(1, 10), opt);
        bool density_failed = false;
        for (const auto& c : rep.checks)
            if (c.name == "subset-density" && c.status == check_status::fail)
                density_failed = true;
        CHECK(density_failed);
    }
}

TEST_CASE("build_disjoint_system") {
    // triangle 0,1,2; three fresh M-populations; L-populations attached to
    // the least member of each
    std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 0}};
    auto attach = [&](int host, int first) {
        for (int i = 0; i < 3; ++i) edges.emplace_back(host, first + i);
    };
    attach(0, 3);
    attach(1, 6);
    attach(2, 9);
    SECTION("shortfall: representatives have no second neighbourhood") {
        graph g(12, edges);
        auto out = build_disjoint_system(g, 4, rational(1, 100), {0, 1, 2});
        CHECK_FALSE(out.system.has_value());
        bool named = false;
        for (const auto& c : out.report.checks)
            if (c.name == "system" && c.status == check_status::fail &&
                c.details.contains("shortfall"))
                named = c.details["shortfall"].get<std::string>().find("L_1") == 0;
        CHECK(named);
    }
    SECTION("full system when the L-populations exist") {
        attach(3, 12);
        attach(6, 15);
        attach(9, 18);
        graph g(21, edges);
        auto out = build_disjoint_system(g, 4, rational(1, 100), {0, 1, 2});
        REQUIRE(out.system.has_value());
        const auto& sys = *out.system;
        CHECK(sys.m_reps == std::vector<int>{3, 6, 9});
        std::set<int> all;
        size_t total = 0;
        for (const auto& s : sys.m_sets) {
            CHECK(s.size() >= 3);
            all.insert(s.begin(), s.end());
            total += s.size();
        }
        for (const auto& s : sys.l_sets) {
            CHECK(s.size() >= 3);
            all.insert(s.begin(), s.end());
            total += s.size();
        }
        CHECK(all.size() == total);  // mutually disjoint
        for (int c : sys.cycle) CHECK_FALSE(all.count(c));
    }
    SECTION("parameter errors") {
        graph g(12, edges);
        CHECK_THROWS_AS(build_disjoint_system(g, 2, rational(1, 10), {0, 1, 2}),
                        std::invalid_argument);
        CHECK_THROWS_AS(build_disjoint_system(g, 4, rational(1, 10), {0, 1, 5}),
                        std::invalid_argument);
    }
}
