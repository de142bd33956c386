#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "oddhom/cycle_analysis.hpp"
#include "oddhom/graph.hpp"
#include "oddhom/parallel.hpp"
#include "oddhom/report.hpp"

namespace oddhom {

// Parameters of the circulant A_{k,r}: n equally spaced points on the unit
// circle, adjacency iff the circular distance between two points falls in
// the open interval ((k-1)/(2k-1), k/(2k-1)).
struct andrasfai_params {
    int k;
    int r;

    andrasfai_params(int k_, int r_) : k(k_), r(r_) {
        if (k < 2) throw std::invalid_argument("andrasfai: k must be at least 2");
        if (r < 1) throw std::invalid_argument("andrasfai: r must be at least 1");
    }

    int order() const { return (2 * k - 1) * (r - 1) + 2; }
    int step() const { return (k - 1) * (r - 1) + 1; }  // closest clockwise neighbour
};

inline graph andrasfai_graph(const andrasfai_params& p) {
    int n = p.order();
    long long k = p.k;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long d = std::min(j - i, n - (j - i));
            // d/n inside ((k-1)/(2k-1), k/(2k-1)), cross-multiplied
            if ((k - 1) * n < (2 * k - 1) * d && (2 * k - 1) * d < k * n)
                edges.emplace_back(i, j);
        }
    return graph(n, edges);
}

// The neighbour indices of v_0 given by the closed form
// {(k-1)(r-1)+1, ..., k(r-1)+1}.
inline std::vector<int> neighbor_indices(const andrasfai_params& p) {
    std::vector<int> out;
    for (int i = (p.k - 1) * (p.r - 1) + 1; i <= p.k * (p.r - 1) + 1; ++i) out.push_back(i);
    return out;
}

// The step sequence u_j = j * step (mod n). Checked on the spot to be a
// Hamiltonian cycle with the r neighbours of u_0 at positions
// s(2k-1)+1, s = 0..r-1; a failure here is an implementation bug.
inline std::vector<int> hamiltonian_cycle(const andrasfai_params& p) {
    if (p.r < 2)
        throw std::invalid_argument("A_{k,1} = K_2 has no Hamiltonian cycle");
    int n = p.order();
    long long step = p.step();
    std::vector<int> seq(n);
    for (int j = 0; j < n; ++j) seq[j] = static_cast<int>((j * step) % n);

    graph g = andrasfai_graph(p);
    std::vector<char> seen(n, 0);
    for (int v : seq) {
        if (seen[v]) throw std::logic_error("step sequence revisits a vertex");
        seen[v] = 1;
    }
    for (int j = 0; j < n; ++j)
        if (!g.adjacent(seq[j], seq[(j + 1) % n]))
            throw std::logic_error("step sequence is not a cycle");
    auto expected = neighbor_indices(p);
    for (int s = 0; s < p.r; ++s) {
        int u = seq[s * (2 * p.k - 1) + 1];
        if (u != expected[s])
            throw std::logic_error("neighbour distribution along the cycle is off");
    }
    return seq;
}

// True iff v -> v+1 (mod n) preserves adjacency.
inline bool has_rotational_symmetry(const graph& g) {
    int n = g.order();
    if (n == 0) return true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.adjacent(i, j) != g.adjacent((i + 1) % n, (j + 1) % n)) return false;
    return true;
}

struct verify_options {
    long long budget = default_node_budget;
    int jobs = 1;
};

// Structural certificate for A_{k,r}: order and regularity, the closed-form
// neighbourhood of v_0, rotational symmetry, odd girth (no odd cycle of
// length <= 2k-1; exactly 2k+1 when r >= 2), the Hamiltonian step sequence,
// a common (2k+1)-cycle for every vertex pair when r >= 2, and the strict
// minimum-degree bound delta/n > 1/(2k-1).
inline certificate_report verify_andrasfai(const andrasfai_params& p,
                                           const verify_options& opt = {}) {
    certificate_report rep;
    rep.subject = "andrasfai";
    rep.params = {{"k", p.k}, {"r", p.r}};

    graph g = andrasfai_graph(p);
    int n = g.order();
    int k = p.k;

    rep.add("order", "|V| = (2k-1)(r-1)+2", n == p.order(), {{"n", n}});

    bool regular = true;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != p.r) regular = false;
    rep.add("regular", "graph is r-regular", regular, {{"r", p.r}});

    auto expected = neighbor_indices(p);
    rep.add("neighbour-indices", "N(v_0) = {(k-1)(r-1)+1, ..., k(r-1)+1}",
            g.neighbors(0).to_vector() == expected, {{"indices", expected}});

    rep.add("rotation", "v_i -> v_{i+1} is an automorphism", has_rotational_symmetry(g));

    rep.add("coprime", "gcd(n, step) = 1", std::gcd(n, p.step()) == 1,
            {{"step", p.step()}});

    parity_distance_table pdt(g);
    int og = odd_girth(g, pdt);
    rep.add("odd-cycle-free", "no odd cycle of length <= 2k-1",
            og > 2 * k - 1,
            {{"odd_girth", og == infinite_length ? nlohmann::ordered_json("infinity")
                                                 : nlohmann::ordered_json(og)}});
    if (p.r >= 2)
        rep.add("odd-girth-exact", "odd girth equals 2k+1", og == 2 * k + 1);

    if (p.r >= 2) {
        auto seq = hamiltonian_cycle(p);
        rep.add("hamiltonian-step",
                "u_j = j((k-1)(r-1)+1) mod n is a Hamiltonian cycle with the "
                "r neighbours of u_0 every (2k-1) steps",
                static_cast<int>(seq.size()) == n, {{"sequence_head", std::vector<int>(seq.begin(), seq.begin() + std::min(n, 8))}});

        // every pair of vertices on a common cycle of length 2k+1
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        std::vector<search_status> results(pairs.size());
        parallel_for(static_cast<int>(pairs.size()), opt.jobs, [&](int i) {
            node_budget b(opt.budget);
            results[i] = cycle_through_pair(g, 2 * k + 1, pairs[i].first,
                                            pairs[i].second, b, pdt)
                             .status;
        });
        check_status st = check_status::pass;
        nlohmann::ordered_json detail{{"pairs", pairs.size()}};
        for (size_t i = 0; i < pairs.size(); ++i) {
            if (results[i] == search_status::aborted) {
                st = check_status::abort;
                detail["pair"] = {pairs[i].first, pairs[i].second};
                break;
            }
            if (results[i] == search_status::exhausted) {
                st = check_status::fail;
                detail["pair"] = {pairs[i].first, pairs[i].second};
                break;
            }
        }
        rep.add("pair-cycle", "any two vertices lie on a common cycle of length 2k+1",
                st, detail);
    }

    rational ratio = min_degree_ratio(g);
    rep.add("degree-ratio", "delta/n > 1/(2k-1)", ratio > rational(1, 2 * k - 1),
            {{"ratio", ratio.str()}});
    return rep;
}

} // namespace oddhom
