#pragma once

#include <stdexcept>
#include <vector>

#include "oddhom/andrasfai.hpp"
#include "oddhom/cycle_analysis.hpp"
#include "oddhom/graph.hpp"
#include "oddhom/homomorphism.hpp"
#include "oddhom/report.hpp"

namespace oddhom {

// Subdivision of K_4 in which one perfect matching is replaced by paths of
// length 2(k-3)+1 and the remaining four edges by paths of length 3. The
// four original vertices keep ids 0..3; subdivision vertices follow, edge
// by edge in lexicographic order, walking from the lower endpoint.
struct tetra_star_graph {
    graph g;
    tetra_spec spec;
    // For each vertex on a long (matching) path: distances to the two path
    // endpoints, (-1,-1) elsewhere. Drives the blow-up weightings.
    std::vector<std::pair<int, int>> long_path_position;
};

inline tetra_star_graph tetra_star(int k) {
    if (k < 4) throw std::invalid_argument("tetra_star requires k >= 4");
    int long_len = 2 * (k - 3) + 1;
    struct sub_edge {
        int u, v, len;
    };
    // matching {01, 23} long, the other four short
    std::vector<sub_edge> plan = {{0, 1, long_len}, {0, 2, 3}, {0, 3, 3},
                                  {1, 2, 3},        {1, 3, 3}, {2, 3, long_len}};
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> long_pos(4, {-1, -1});
    int next_id = 4;
    for (const auto& e : plan) {
        int prev = e.u;
        for (int i = 1; i < e.len; ++i) {
            long_pos.emplace_back(e.len == long_len ? i : -1,
                                  e.len == long_len ? e.len - i : -1);
            edges.emplace_back(prev, next_id);
            prev = next_id++;
        }
        edges.emplace_back(prev, e.v);
    }
    tetra_star_graph out{graph(next_id, edges), {}, std::move(long_pos)};
    auto spec = recognize_tetra(out.g, k);
    if (!spec) throw std::logic_error("tetra_star failed its own decomposition check");
    out.spec = *spec;
    if (out.g.order() != 4 * k) throw std::logic_error("tetra_star order mismatch");
    return out;
}

// Weighting for the parity blow-ups of the tetrahedron. Heavy vertices are
// the four degree-3 originals plus the long-path vertices at distance
// 0 (mod 4) — for even k — respectively 1 (mod 4) — for odd k — from one of
// the two ends of their path.
inline vertex_weighting tetra_blowup_weights(const tetra_star_graph& ts, int k, int f) {
    if (f < 1) throw std::invalid_argument("scale factor must be positive");
    bool even = k % 2 == 0;
    int residue = even ? 0 : 1;
    int heavy = even ? 2 * f : f;
    int light = even ? f : 1;
    vertex_weighting w(ts.g.order(), light);
    for (int v = 0; v < ts.g.order(); ++v) {
        auto [d1, d2] = ts.long_path_position[v];
        if (v < 4 || (d1 >= 0 && (d1 % 4 == residue || d2 % 4 == residue))) w[v] = heavy;
    }
    return w;
}

inline vertex_weighting tetra_blowup_weights(int k, int f) {
    return tetra_blowup_weights(tetra_star(k), k, f);
}

// Even-k blow-up: 3f-regular on (6k-4)f vertices.
inline graph blowup_even(int k, int f) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("blowup_even requires even k >= 4");
    auto ts = tetra_star(k);
    graph b = blow_up(ts.g, tetra_blowup_weights(ts, k, f));
    if (b.order() != (6 * k - 4) * f) throw std::logic_error("blowup_even order mismatch");
    for (int v = 0; v < b.order(); ++v)
        if (b.degree(v) != 3 * f) throw std::logic_error("blowup_even is not 3f-regular");
    return b;
}

// Odd-k blow-up: (f+1)(2k-2)+4 vertices, minimum degree f+1.
inline graph blowup_odd(int k, int f) {
    if (k < 5 || k % 2 == 0) throw std::invalid_argument("blowup_odd requires odd k >= 5");
    auto ts = tetra_star(k);
    graph b = blow_up(ts.g, tetra_blowup_weights(ts, k, f));
    if (b.order() != (f + 1) * (2 * k - 2) + 4) throw std::logic_error("blowup_odd order mismatch");
    if (b.min_degree() != f + 1) throw std::logic_error("blowup_odd minimum degree mismatch");
    return b;
}

inline graph tetra_blowup(int k, int f) {
    return k % 2 == 0 ? blowup_even(k, f) : blowup_odd(k, f);
}

struct certify_options {
    long long budget = default_node_budget;
    int jobs = 1;
};

// End-to-end certificate for one blow-up instance: construction sizes match
// the closed forms, no odd cycle of length <= 2k-1, exact minimum-degree
// margin, and no homomorphism into A_{k,r} for r <= r_max (checked both on
// the blow-up directly and through the collapse map onto the base
// tetrahedron).
inline certificate_report certify_counterexample(int k, int f, int r_max,
                                                 const rational& eps,
                                                 const certify_options& opt = {}) {
    if (k < 4) throw std::invalid_argument("counterexamples exist for k >= 4 only");
    if (!(eps > rational(0))) throw std::invalid_argument("eps must be positive");
    certificate_report rep;
    rep.subject = "tetra-counterexample";
    rep.params = {{"k", k}, {"f", f}, {"r_max", r_max}, {"eps", eps.str()},
                  {"parity", k % 2 == 0 ? "even" : "odd"}};

    auto ts = tetra_star(k);
    graph b = tetra_blowup(k, f);
    int n = b.order();

    if (k % 2 == 0)
        rep.add("size", "blow-up is 3f-regular on (6k-4)f vertices",
                n == (6 * k - 4) * f && b.min_degree() == 3 * f,
                {{"n", n}, {"delta", b.min_degree()}});
    else
        rep.add("size", "blow-up has (f+1)(2k-2)+4 vertices and minimum degree f+1",
                n == (f + 1) * (2 * k - 2) + 4 && b.min_degree() == f + 1,
                {{"n", n}, {"delta", b.min_degree()}});

    int og = odd_girth(b);
    rep.add("odd-girth", "no odd cycle of length <= 2k-1 (odd girth = 2k+1)",
            og == 2 * k + 1, {{"odd_girth", og}});

    rational ratio = min_degree_ratio(b);
    rational threshold = rational(1, 2 * k - 1);
    rational margin = ratio - threshold;
    rep.add("degree-margin", "delta/n >= 1/(2k-1) + eps, exact rationals",
            ratio >= threshold + eps,
            {{"ratio", ratio.str()}, {"eps", eps.str()}, {"max_eps", margin.str()}});
    rep.add("margin-positive", "the maximal admissible eps is positive",
            margin > rational(0), {{"max_eps", margin.str()}});

    // collapse map: blow-up -> base tetrahedron
    auto w = tetra_blowup_weights(k, f);
    std::vector<int> collapse;
    collapse.reserve(n);
    for (int v = 0; v < ts.g.order(); ++v)
        for (int c = 0; c < w[v]; ++c) collapse.push_back(v);
    rep.add("collapse", "class-collapse map is a homomorphism onto the base tetrahedron",
            !verify_homomorphism(b, ts.g, collapse).has_value());

    hom_options ho;
    ho.budget = opt.budget;
    ho.jobs = opt.jobs;
    auto base_rows = hom_to_andrasfai(ts.g, k, r_max, ho);
    for (const auto& row : base_rows)
        rep.add("base-no-hom/r=" + std::to_string(row.r),
                "base tetrahedron admits no homomorphism into A_{k," +
                    std::to_string(row.r) + "}",
                check_status_of(row.outcome.status, false),
                {{"nodes", row.outcome.nodes}});
    auto blow_rows = hom_to_andrasfai(b, k, r_max, ho);
    for (const auto& row : blow_rows)
        rep.add("blowup-no-hom/r=" + std::to_string(row.r),
                "blow-up admits no homomorphism into A_{k," + std::to_string(row.r) + "}",
                check_status_of(row.outcome.status, false),
                {{"nodes", row.outcome.nodes}});
    return rep;
}

} // namespace oddhom
