#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oddhom/andrasfai.hpp"
#include "oddhom/cycle_analysis.hpp"
#include "oddhom/graph.hpp"
#include "oddhom/parallel.hpp"

namespace oddhom {

// Checks every source edge under the vertex map, independently of the
// solver. Returns the first violated edge, or nullopt on pass.
inline std::optional<std::pair<int, int>> verify_homomorphism(const graph& source,
                                                              const graph& target,
                                                              const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != source.order())
        throw std::invalid_argument("map must be total on the source vertex set");
    for (int v : map)
        if (v < 0 || v >= target.order())
            throw std::invalid_argument("map image out of target range");
    for (auto [u, v] : source.edges())
        if (!target.adjacent(map[u], map[v])) return std::make_pair(u, v);
    return std::nullopt;
}

struct hom_options {
    long long budget = default_node_budget;
    bool odd_girth_precheck = true;
    // Restrict the first search variable to target vertex 0. Only applied
    // after the rotation v -> v+1 is verified to be an automorphism of the
    // target, which makes every target vertex equivalent.
    bool target_rotational_orbit = false;
    std::vector<std::pair<int, int>> pins;  // forced assignments v -> a
    int jobs = 1;                           // first-variable value splitting
};

struct hom_result {
    search_status status = search_status::exhausted;
    std::vector<int> map;
    long long nodes = 0;
    std::string obstruction;  // set when a precheck certified the negative

    bool found() const { return status == search_status::found; }
};

namespace detail {

// Connected variable order, highest degree first.
inline std::vector<int> hom_variable_order(const graph& g) {
    int n = g.order();
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> chosen(n, 0);
    bitset frontier(n);
    auto pick_best = [&](bool frontier_only) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (chosen[v]) continue;
            if (frontier_only && !frontier.test(v)) continue;
            if (best < 0 || g.degree(v) > g.degree(best)) best = v;
        }
        return best;
    };
    while (static_cast<int>(order.size()) < n) {
        int v = pick_best(true);
        if (v < 0) v = pick_best(false);  // next component
        chosen[v] = 1;
        order.push_back(v);
        frontier.unite_with(g.neighbors(v));
    }
    return order;
}

struct hom_searcher {
    const graph& g;
    const graph& h;
    node_budget budget;
    const std::atomic<int>* cancel_below = nullptr;  // parallel split support
    int own_first_value = -1;

    std::vector<int> order, pos_of, map;
    std::vector<bitset> dom;
    bool aborted = false;
    bool cancelled = false;

    hom_searcher(const graph& g_, const graph& h_, long long budget_limit)
        : g(g_), h(h_), budget(budget_limit) {
        order = hom_variable_order(g);
        pos_of.assign(g.order(), 0);
        for (int p = 0; p < g.order(); ++p) pos_of[order[p]] = p;
        map.assign(g.order(), -1);
        bitset full(h.order());
        full.set_all();
        dom.assign(g.order(), full);
    }

    // Enumerates solutions; on_solution returning true stops the search.
    template <typename F>
    search_status run(F&& on_solution) {
        dfs(0, on_solution);
        if (aborted) return search_status::aborted;
        if (stopped_) return search_status::found;
        if (cancelled) return search_status::aborted;  // only under external cancel
        return search_status::exhausted;
    }

private:
    bool stopped_ = false;

    template <typename F>
    void dfs(int p, F&& on_solution) {
        if (!budget.tick()) {
            aborted = true;
            return;
        }
        if (cancel_below && cancel_below->load(std::memory_order_relaxed) < own_first_value) {
            cancelled = true;
            return;
        }
        if (p == g.order()) {
            stopped_ = on_solution(map);
            return;
        }
        int v = order[p];
        const bitset& candidates = dom[v];
        std::vector<std::pair<int, bitset>> saved;
        for (int a = candidates.next(0); a >= 0; a = candidates.next(a + 1)) {
            map[v] = a;
            bool ok = true;
            saved.clear();
            const bitset& vnb = g.neighbors(v);
            for (int w = vnb.next(0); w >= 0; w = vnb.next(w + 1)) {
                if (pos_of[w] <= p) continue;
                saved.emplace_back(w, dom[w]);
                dom[w].intersect_with(h.neighbors(a));
                if (dom[w].empty()) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                dfs(p + 1, on_solution);
                if (stopped_ || aborted || cancelled) {
                    for (auto& [w, d] : saved) dom[w] = std::move(d);
                    map[v] = -1;
                    return;
                }
            }
            for (auto& [w, d] : saved) dom[w] = std::move(d);
        }
        map[v] = -1;
    }
};

inline void apply_pins(hom_searcher& s, const std::vector<std::pair<int, int>>& pins,
                       const graph& g, const graph& h) {
    for (auto [v, a] : pins) {
        if (v < 0 || v >= g.order() || a < 0 || a >= h.order())
            throw std::invalid_argument("pin out of range");
        bitset single(h.order());
        single.set(a);
        s.dom[v].intersect_with(single);
    }
}

} // namespace detail

// Backtracking search for an edge-preserving map from g into h, with
// forward checking over bitset domains. Certified none means the search
// space was exhausted; budget aborts are a distinct outcome.
inline hom_result find_homomorphism(const graph& g, const graph& h,
                                    const hom_options& opt = {}) {
    if (g.order() == 0 || h.order() == 0)
        throw std::invalid_argument("homomorphism search needs non-empty graphs");

    hom_result res;
    if (g.edge_count() > 0 && h.edge_count() == 0) {
        res.status = search_status::exhausted;
        res.obstruction = "target has no edge";
        return res;
    }
    if (opt.odd_girth_precheck) {
        int og_g = odd_girth(g), og_h = odd_girth(h);
        if (og_h > og_g) {
            res.status = search_status::exhausted;
            res.obstruction =
                "odd girth obstruction: an odd closed walk maps to an odd closed walk "
                "of the same length, but the target has odd girth " +
                (og_h == infinite_length ? std::string("infinity") : std::to_string(og_h)) +
                " > " + std::to_string(og_g);
            return res;
        }
    }

    bool orbit = opt.target_rotational_orbit && opt.pins.empty() &&
                 has_rotational_symmetry(h);

    auto run_one = [&](int first_value, bool use_first, const std::atomic<int>* cancel,
                       hom_result& out) {
        detail::hom_searcher s(g, h, opt.budget);
        detail::apply_pins(s, opt.pins, g, h);
        if (orbit && !use_first) {
            bitset single(h.order());
            single.set(0);
            s.dom[s.order[0]].intersect_with(single);
        }
        if (use_first) {
            bitset single(h.order());
            single.set(first_value);
            s.dom[s.order[0]].intersect_with(single);
            s.cancel_below = cancel;
            s.own_first_value = first_value;
        }
        out.status = s.run([&](const std::vector<int>& m) {
            out.map = m;
            return true;
        });
        if (s.cancelled) out.status = search_status::exhausted;  // superseded branch
        out.nodes = s.budget.used();
    };

    if (opt.jobs <= 1 || g.order() == 0) {
        run_one(-1, false, nullptr, res);
        return res;
    }

    // Deterministic first-variable value splitting: the decisive branch is
    // the least first-value whose outcome is found or aborted.
    detail::hom_searcher probe(g, h, 1);
    detail::apply_pins(probe, opt.pins, g, h);
    if (orbit) {
        bitset single(h.order());
        single.set(0);
        probe.dom[probe.order[0]].intersect_with(single);
    }
    std::vector<int> values = probe.dom[probe.order[0]].to_vector();
    if (values.empty()) {
        res.status = search_status::exhausted;
        return res;
    }
    std::vector<hom_result> branch(values.size());
    std::atomic<int> best_found{INT_MAX};
    parallel_for(static_cast<int>(values.size()), opt.jobs, [&](int i) {
        if (best_found.load(std::memory_order_relaxed) < values[i]) return;
        run_one(values[i], true, &best_found, branch[i]);
        if (branch[i].status == search_status::found) {
            int expect = best_found.load();
            while (values[i] < expect &&
                   !best_found.compare_exchange_weak(expect, values[i])) {
            }
        }
    });
    for (size_t i = 0; i < values.size(); ++i) {
        res.nodes += branch[i].nodes;
        if (res.status == search_status::exhausted &&
            branch[i].status != search_status::exhausted) {
            res.status = branch[i].status;
            res.map = branch[i].map;
        }
    }
    return res;
}

// Enumerates homomorphisms (sequentially); the callback returning true
// stops the enumeration.
template <typename F>
inline search_status enumerate_homomorphisms(const graph& g, const graph& h,
                                             const hom_options& opt, F&& on_solution) {
    if (g.order() == 0 || h.order() == 0)
        throw std::invalid_argument("homomorphism search needs non-empty graphs");
    detail::hom_searcher s(g, h, opt.budget);
    detail::apply_pins(s, opt.pins, g, h);
    if (opt.target_rotational_orbit && opt.pins.empty() && has_rotational_symmetry(h)) {
        bitset single(h.order());
        single.set(0);
        s.dom[s.order[0]].intersect_with(single);
    }
    return s.run(on_solution);
}

// Per-r outcomes of mapping g into A_{k,r}, r = 1..r_max, each reported
// independently.
struct andrasfai_hom_row {
    int r;
    hom_result outcome;
};

inline std::vector<andrasfai_hom_row> hom_to_andrasfai(const graph& g, int k, int r_max,
                                                       const hom_options& opt = {}) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (r_max < 1) throw std::invalid_argument("r_max must be at least 1");
    std::vector<andrasfai_hom_row> rows(r_max);
    parallel_for(r_max, opt.jobs, [&](int i) {
        int r = i + 1;
        graph h = andrasfai_graph(andrasfai_params(k, r));
        hom_options o = opt;
        o.jobs = 1;
        o.target_rotational_orbit = true;
        rows[i] = {r, find_homomorphism(g, h, o)};
    });
    return rows;
}

// A (2k+1)-tetrahedron decomposition: outer cycle, three branch vertices,
// center, and three spokes of length >= 2 such that every cycle through the
// center and exactly two branch vertices has length 2k+1.
struct tetra_spec {
    int k = 0;
    int center = -1;
    std::array<int, 3> branch{};                // in outer-cycle order
    std::array<std::vector<int>, 3> spokes;     // center..branch[i]
    std::array<int, 3> spoke_length{};
    std::array<int, 3> arc_length{};            // branch[i] -> branch[i+1] arc avoiding the third
    std::vector<int> outer_cycle;
};

// Exact decomposition: g must equal the union of the outer cycle and the
// three spokes. Degree profile forces candidates: the center and branch
// vertices are the only degree-3 vertices, everything else is degree 2.
inline std::optional<tetra_spec> recognize_tetra(const graph& g, int k) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    int n = g.order();
    std::vector<int> deg3;
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) == 3) deg3.push_back(v);
        else if (g.degree(v) != 2) return std::nullopt;
    }
    if (deg3.size() != 4) return std::nullopt;

    for (int z : deg3) {
        // Follow the three chains out of z through degree-2 vertices.
        std::array<std::vector<int>, 3> spokes;
        bool valid = true;
        auto znb = g.neighbors(z).to_vector();
        for (int s = 0; s < 3 && valid; ++s) {
            std::vector<int> chain{z, znb[s]};
            while (g.degree(chain.back()) == 2) {
                const bitset& nb = g.neighbors(chain.back());
                int prev = chain[chain.size() - 2];
                int next = nb.next(0) == prev ? nb.next(nb.next(0) + 1) : nb.next(0);
                chain.push_back(next);
            }
            if (chain.back() == z || static_cast<int>(chain.size()) < 3) valid = false;
            spokes[s] = std::move(chain);
        }
        if (!valid) continue;
        std::array<int, 3> ends{spokes[0].back(), spokes[1].back(), spokes[2].back()};
        if (ends[0] == ends[1] || ends[0] == ends[2] || ends[1] == ends[2]) continue;

        // Remaining edges must form one cycle through the three ends.
        std::vector<char> on_spoke(n, 0);
        on_spoke[z] = 1;
        for (const auto& sp : spokes)
            for (size_t i = 1; i + 1 < sp.size(); ++i) on_spoke[sp[i]] = 1;
        int expected_cycle_len = n - 1;
        for (const auto& sp : spokes) expected_cycle_len -= static_cast<int>(sp.size()) - 2;

        int start = ends[0];
        std::vector<int> cycle{start};
        std::vector<char> visited(n, 0);
        visited[start] = 1;
        int prev = -1, cur = start;
        bool closed = false;
        while (true) {
            int next = -1;
            const bitset& nb = g.neighbors(cur);
            for (int w = nb.next(0); w >= 0; w = nb.next(w + 1)) {
                if (w == prev || on_spoke[w]) continue;
                // skip the spoke edge at a branch vertex
                bool is_spoke_edge = false;
                for (const auto& sp : spokes)
                    if (sp.back() == cur && sp[sp.size() - 2] == w) is_spoke_edge = true;
                if (is_spoke_edge) continue;
                next = w;
                break;
            }
            if (next == -1) break;
            if (next == start) {
                closed = true;
                break;
            }
            if (visited[next]) break;
            visited[next] = 1;
            cycle.push_back(next);
            prev = cur;
            cur = next;
        }
        if (!closed || static_cast<int>(cycle.size()) != expected_cycle_len) continue;

        // Branch positions along the cycle, in traversal order.
        std::vector<std::pair<int, int>> pos;  // (position, spoke index)
        for (int s = 0; s < 3; ++s) {
            auto it = std::find(cycle.begin(), cycle.end(), ends[s]);
            if (it == cycle.end()) { valid = false; break; }
            pos.emplace_back(static_cast<int>(it - cycle.begin()), s);
        }
        if (!valid) continue;
        std::sort(pos.begin(), pos.end());
        int clen = static_cast<int>(cycle.size());

        tetra_spec spec;
        spec.k = k;
        spec.center = z;
        spec.outer_cycle = cycle;
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            int si = pos[i].second;
            spec.branch[i] = ends[si];
            spec.spokes[i] = spokes[si];
            spec.spoke_length[i] = static_cast<int>(spokes[si].size()) - 1;
            if (spec.spoke_length[i] < 2) ok = false;
            int p = pos[i].first, q = pos[(i + 1) % 3].first;
            spec.arc_length[i] = i < 2 ? q - p : clen - p + q;
        }
        if (!ok) continue;
        for (int i = 0; i < 3 && ok; ++i) {
            int two_spoke_cycle =
                spec.spoke_length[i] + spec.spoke_length[(i + 1) % 3] + spec.arc_length[i];
            if (two_spoke_cycle != 2 * k + 1) ok = false;
        }
        if (ok) return spec;
    }
    return std::nullopt;
}

} // namespace oddhom
