#pragma once

#include <algorithm>
#include <bit>
#include <climits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "oddhom/graph.hpp"
#include "oddhom/rational.hpp"
#include "oddhom/report.hpp"
#include "oddhom/search.hpp"

namespace oddhom {

inline constexpr int unreachable = -1;
inline constexpr int infinite_length = INT_MAX;

// Shortest even-walk and odd-walk lengths for every ordered pair, from
// breadth-first search on the 2n-state (vertex, parity) graph. A minimal
// odd walk contains an odd path or an odd cycle of no greater length, which
// is what the lemma checkers query.
class parity_distance_table {
public:
    explicit parity_distance_table(const graph& g) : n_(g.order()) {
        even_.assign(static_cast<size_t>(n_) * n_, unreachable);
        odd_.assign(static_cast<size_t>(n_) * n_, unreachable);
        std::vector<int> dist(2 * n_);
        std::vector<int> queue;
        queue.reserve(2 * n_);
        for (int s = 0; s < n_; ++s) {
            std::fill(dist.begin(), dist.end(), unreachable);
            queue.clear();
            dist[2 * s] = 0;
            queue.push_back(2 * s);
            for (size_t head = 0; head < queue.size(); ++head) {
                int state = queue[head];
                int v = state >> 1, parity = state & 1;
                int d = dist[state];
                g.neighbors(v).for_each([&](int w) {
                    int next = 2 * w + (parity ^ 1);
                    if (dist[next] == unreachable) {
                        dist[next] = d + 1;
                        queue.push_back(next);
                    }
                });
            }
            for (int v = 0; v < n_; ++v) {
                even_[idx(s, v)] = dist[2 * v];
                odd_[idx(s, v)] = dist[2 * v + 1];
            }
        }
    }

    int order() const { return n_; }
    int even(int u, int v) const { return even_[idx(u, v)]; }
    int odd(int u, int v) const { return odd_[idx(u, v)]; }
    int dist(int u, int v, int parity) const { return parity & 1 ? odd(u, v) : even(u, v); }

    // True iff a walk of exactly `len` edges from u to v exists (a shorter
    // walk of matching parity pads to the exact length by retraversing an
    // edge).
    bool exact_walk_possible(int u, int v, int len) const {
        int d = dist(u, v, len & 1);
        return d != unreachable && d <= len;
    }

private:
    size_t idx(int u, int v) const { return static_cast<size_t>(u) * n_ + v; }
    int n_;
    std::vector<int> even_, odd_;
};

// Length of the shortest odd cycle; infinite_length iff bipartite. A
// minimal odd closed walk is a cycle, so the diagonal of the odd table
// suffices.
inline int odd_girth(const graph& g, const parity_distance_table& pdt) {
    int best = infinite_length;
    for (int v = 0; v < g.order(); ++v) {
        int d = pdt.odd(v, v);
        if (d != unreachable) best = std::min(best, d);
    }
    return best;
}

inline int odd_girth(const graph& g) {
    return odd_girth(g, parity_distance_table(g));
}

namespace detail {

// Backtracking enumeration of simple cycles of an exact length, pruned by
// exact-walk feasibility against the parity table of the host graph (a
// lower bound, hence still sound under vertex restrictions). In min_anchor
// mode the anchor is the least vertex of the cycle, so every cycle is
// generated at least once and none twice per orientation class.
struct cycle_searcher {
    const graph& g;
    const parity_distance_table& pdt;
    node_budget& budget;
    int len;
    const bitset* allowed = nullptr;  // restrict to this vertex set when set
    int require = -1;                 // cycle must contain this vertex
    bool min_anchor = true;

    int anchor = -1;
    std::vector<int> path;
    std::vector<char> used;
    bool aborted = false;

    cycle_searcher(const graph& g_, const parity_distance_table& pdt_, node_budget& b,
                   int len_)
        : g(g_), pdt(pdt_), budget(b), len(len_), used(g_.order(), 0) {}

    // Calls on_cycle(path) per cycle; a true return stops the enumeration.
    template <typename F>
    search_status run(F&& on_cycle) {
        for (int a = 0; a < g.order(); ++a) {
            if (allowed && !allowed->test(a)) continue;
            if (run_anchored(a, on_cycle)) return search_status::found;
            if (aborted) return search_status::aborted;
        }
        return search_status::exhausted;
    }

    template <typename F>
    bool run_anchored(int a, F&& on_cycle) {
        if (!pdt.exact_walk_possible(a, a, len)) return false;
        anchor = a;
        path.assign(1, a);
        used[a] = 1;
        bool stop = dfs(on_cycle);
        used[a] = 0;
        return stop;
    }

private:
    template <typename F>
    bool dfs(F&& on_cycle) {
        if (!budget.tick()) {
            aborted = true;
            return false;
        }
        int cur = path.back();
        int depth = static_cast<int>(path.size());
        if (depth == len)
            return g.adjacent(cur, anchor) && (require < 0 || used[require]) &&
                   on_cycle(path);
        int rem = len - depth + 1;  // edges still to traverse, closing edge included
        if (!pdt.exact_walk_possible(cur, anchor, rem)) return false;
        if (require >= 0 && !used[require] && !via_feasible(cur, rem)) return false;
        const bitset& nb = g.neighbors(cur);
        int first = min_anchor ? anchor + 1 : 0;
        for (int v = nb.next(first); v >= 0; v = nb.next(v + 1)) {
            if (used[v] || (allowed && !allowed->test(v))) continue;
            used[v] = 1;
            path.push_back(v);
            bool stop = dfs(on_cycle);
            path.pop_back();
            used[v] = 0;
            if (stop) return true;
            if (aborted) return false;
        }
        return false;
    }

    // Feasibility of cur -> require -> anchor within rem edges, parity exact.
    bool via_feasible(int cur, int rem) const {
        for (int p = 0; p <= 1; ++p) {
            int d1 = pdt.dist(cur, require, p);
            int d2 = pdt.dist(require, anchor, (rem - p) & 1);
            if (d1 != unreachable && d2 != unreachable && d1 + d2 <= rem) return true;
        }
        return false;
    }
};

} // namespace detail

// A cycle of exactly `len` distinct vertices, certified none, or a budget
// abort. The witness starts at its least vertex.
inline search_result<std::vector<int>> contains_cycle(const graph& g, int len,
                                                      node_budget& budget,
                                                      const parity_distance_table* pdt = nullptr) {
    if (len < 3) throw std::invalid_argument("cycle length must be at least 3");
    search_result<std::vector<int>> res;
    if (g.order() < len) return res;
    std::optional<parity_distance_table> own;
    if (!pdt) own.emplace(g);
    const parity_distance_table& table = pdt ? *pdt : *own;
    detail::cycle_searcher cs(g, table, budget, len);
    res.status = cs.run([&](const std::vector<int>& c) {
        res.witness = c;
        return true;
    });
    res.nodes = budget.used();
    return res;
}

inline search_result<std::vector<int>> contains_cycle(const graph& g, int len,
                                                      long long budget_limit = default_node_budget) {
    node_budget b(budget_limit);
    return contains_cycle(g, len, b);
}

// A cycle of exactly `len` vertices through both u and v.
inline search_result<std::vector<int>> cycle_through_pair(const graph& g, int len, int u,
                                                          int v, node_budget& budget,
                                                          const parity_distance_table& pdt) {
    if (len < 3) throw std::invalid_argument("cycle length must be at least 3");
    if (u == v) throw std::invalid_argument("pair must be distinct");
    search_result<std::vector<int>> res;
    detail::cycle_searcher cs(g, pdt, budget, len);
    cs.min_anchor = false;
    cs.require = v;
    bool stop = cs.run_anchored(u, [&](const std::vector<int>& c) {
        res.witness = c;
        return true;
    });
    res.status = cs.aborted ? search_status::aborted
                            : (stop ? search_status::found : search_status::exhausted);
    res.nodes = budget.used();
    return res;
}

// Two vertex-disjoint cycles of length `len` plus a joining path of length
// 4 that is internally disjoint from both.
struct d_witness {
    std::vector<int> cycle1, cycle2;
    std::vector<int> path;  // 5 vertices, path[0] on cycle1, path[4] on cycle2

    bool valid_in(const graph& g) const {
        if (!is_cycle_of(g, cycle1) || !is_cycle_of(g, cycle2)) return false;
        if (cycle1.size() != cycle2.size() || path.size() != 5) return false;
        bitset c1(g.order()), c2(g.order());
        for (int v : cycle1) c1.set(v);
        for (int v : cycle2) c2.set(v);
        if (c1.intersects(c2)) return false;
        if (!c1.test(path[0]) || !c2.test(path[4])) return false;
        for (int i = 1; i <= 3; ++i) {
            if (c1.test(path[i]) || c2.test(path[i])) return false;
            for (int j = i + 1; j <= 3; ++j)
                if (path[i] == path[j]) return false;
        }
        for (int i = 0; i < 4; ++i)
            if (!g.adjacent(path[i], path[i + 1])) return false;
        return true;
    }
};

inline search_result<d_witness> contains_d(const graph& g, int len, node_budget& budget,
                                           const parity_distance_table* pdt = nullptr) {
    if (len < 3 || len % 2 == 0)
        throw std::invalid_argument("D_l is searched for odd l >= 3 only");
    search_result<d_witness> res;
    if (g.order() < 2 * len + 3) return res;
    std::optional<parity_distance_table> own;
    if (!pdt) own.emplace(g);
    const parity_distance_table& table = pdt ? *pdt : *own;

    bool aborted = false;
    detail::cycle_searcher outer(g, table, budget, len);
    outer.run([&](const std::vector<int>& c1) {
        bitset block1(g.order());
        for (int v : c1) block1.set(v);
        bitset rest(g.order());
        rest.set_all();
        rest.subtract(block1);

        detail::cycle_searcher inner(g, table, budget, len);
        inner.allowed = &rest;
        search_status st2 = inner.run([&](const std::vector<int>& c2) {
            bitset block(g.order());
            for (int v : c2) block.set(v);
            block.unite_with(block1);
            // joining path x a b c y, interior off both cycles
            for (int x : c1) {
                const bitset& an = g.neighbors(x);
                for (int a = an.next(0); a >= 0; a = an.next(a + 1)) {
                    if (block.test(a)) continue;
                    if (!budget.tick()) {
                        aborted = true;
                        return true;
                    }
                    const bitset& bn = g.neighbors(a);
                    for (int b = bn.next(0); b >= 0; b = bn.next(b + 1)) {
                        if (block.test(b)) continue;
                        const bitset& cn = g.neighbors(b);
                        for (int c = cn.next(0); c >= 0; c = cn.next(c + 1)) {
                            if (block.test(c) || c == a) continue;
                            for (int y : c2) {
                                if (!g.adjacent(c, y)) continue;
                                res.witness = d_witness{c1, c2, {x, a, b, c, y}};
                                return true;
                            }
                        }
                    }
                }
            }
            return false;
        });
        if (st2 == search_status::aborted) aborted = true;
        return res.witness.has_value() || aborted;
    });
    if (outer.aborted) aborted = true;
    res.status = res.witness ? search_status::found
               : aborted     ? search_status::aborted
                             : search_status::exhausted;
    res.nodes = budget.used();
    return res;
}

inline search_result<d_witness> contains_d(const graph& g, int len,
                                           long long budget_limit = default_node_budget) {
    node_budget b(budget_limit);
    return contains_d(g, len, b);
}

// Simple path on exactly t vertices, by exhaustive extension.
inline search_result<std::vector<int>> find_path_on_vertices(const graph& g, int t,
                                                             node_budget& budget) {
    if (t < 1) throw std::invalid_argument("path must have at least one vertex");
    search_result<std::vector<int>> res;
    if (g.order() < t) return res;
    if (t == 1) {
        res.status = search_status::found;
        res.witness = std::vector<int>{0};
        return res;
    }
    std::vector<int> path;
    std::vector<char> used(g.order(), 0);
    bool aborted = false;

    auto dfs = [&](auto&& self) -> bool {
        if (!budget.tick()) {
            aborted = true;
            return false;
        }
        if (static_cast<int>(path.size()) == t) return path.front() < path.back();
        const bitset& nb = g.neighbors(path.back());
        for (int v = nb.next(0); v >= 0; v = nb.next(v + 1)) {
            if (used[v]) continue;
            used[v] = 1;
            path.push_back(v);
            if (self(self)) return true;
            path.pop_back();
            used[v] = 0;
            if (aborted) return false;
        }
        return false;
    };

    for (int s = 0; s < g.order() && !aborted; ++s) {
        path.assign(1, s);
        used[s] = 1;
        if (dfs(dfs)) {
            res.status = search_status::found;
            res.witness = path;
            return res;
        }
        used[s] = 0;
    }
    res.status = aborted ? search_status::aborted : search_status::exhausted;
    res.nodes = budget.used();
    return res;
}

inline search_result<std::vector<int>> find_path_on_vertices(const graph& g, int t,
                                                             long long budget_limit = default_node_budget) {
    node_budget b(budget_limit);
    return find_path_on_vertices(g, t, b);
}

// Path of even length t with both endpoints in A, in a graph whose edges
// all cross between A and B.
inline search_result<std::vector<int>> find_even_path_bipartite(const graph& g,
                                                                const std::vector<int>& a_side,
                                                                const std::vector<int>& b_side,
                                                                int t, node_budget& budget) {
    if (t < 2 || t % 2 != 0)
        throw std::invalid_argument("even path length must be a positive even number");
    bitset in_a(g.order()), in_b(g.order());
    for (int v : a_side) in_a.set(v);
    for (int v : b_side) in_b.set(v);
    if (in_a.intersects(in_b)) throw std::invalid_argument("sides must be disjoint");
    for (auto [u, v] : g.edges())
        if (in_a.test(u) == in_a.test(v) || in_b.test(u) == in_b.test(v))
            throw std::invalid_argument("edge does not cross the bipartition");

    search_result<std::vector<int>> res;
    std::vector<int> path;
    std::vector<char> used(g.order(), 0);
    bool aborted = false;

    auto dfs = [&](auto&& self) -> bool {
        if (!budget.tick()) {
            aborted = true;
            return false;
        }
        if (static_cast<int>(path.size()) == t + 1) return in_a.test(path.back());
        const bitset& nb = g.neighbors(path.back());
        for (int v = nb.next(0); v >= 0; v = nb.next(v + 1)) {
            if (used[v]) continue;
            used[v] = 1;
            path.push_back(v);
            if (self(self)) return true;
            path.pop_back();
            used[v] = 0;
            if (aborted) return false;
        }
        return false;
    };

    for (int s : a_side) {
        if (s < 0 || s >= g.order()) throw std::invalid_argument("side vertex out of range");
        path.assign(1, s);
        used[s] = 1;
        if (dfs(dfs)) {
            res.status = search_status::found;
            res.witness = path;
            return res;
        }
        used[s] = 0;
        if (aborted) break;
    }
    res.status = aborted ? search_status::aborted : search_status::exhausted;
    res.nodes = budget.used();
    return res;
}

// Odd open walk decomposition: either an odd endpoint-to-endpoint path using
// only walk edges, or an odd cycle whose vertices occur in the walk at
// strictly increasing positions. Front-to-back loop erasure: each erased
// loop is a simple closed segment; the first odd one is returned, and if
// every erased loop is even the surviving path is odd.
struct walk_decomposition {
    bool is_path = false;
    std::vector<int> path;             // odd simple path, when is_path
    std::vector<int> cycle;            // c_1..c_l, odd simple cycle, otherwise
    std::vector<int> cycle_positions;  // l+1 strictly increasing indices into the walk
};

inline walk_decomposition decompose_walk(const graph& g, const walk& w) {
    if (!w.valid_in(g)) throw std::invalid_argument("not a walk of the host graph");
    if (w.length() <= 0 || w.length() % 2 == 0)
        throw std::invalid_argument("walk length must be odd");
    if (w.vertices.front() == w.vertices.back())
        throw std::invalid_argument("walk endpoints must be distinct");

    std::vector<int> stack_v, stack_i;
    std::vector<int> depth_of(g.order(), -1);
    for (int i = 0; i < static_cast<int>(w.vertices.size()); ++i) {
        int v = w.vertices[i];
        int p = depth_of[v];
        if (p < 0) {
            depth_of[v] = static_cast<int>(stack_v.size());
            stack_v.push_back(v);
            stack_i.push_back(i);
            continue;
        }
        int loop_len = static_cast<int>(stack_v.size()) - p;
        if (loop_len % 2 == 1) {
            walk_decomposition out;
            out.cycle.assign(stack_v.begin() + p, stack_v.end());
            out.cycle_positions.assign(stack_i.begin() + p, stack_i.end());
            out.cycle_positions.push_back(i);
            return out;
        }
        while (static_cast<int>(stack_v.size()) > p + 1) {
            depth_of[stack_v.back()] = -1;
            stack_v.pop_back();
            stack_i.pop_back();
        }
    }
    walk_decomposition out;
    out.is_path = true;
    out.path = stack_v;
    return out;
}

// --- checkers for the small-neighbourhood lemma and the disjoint system ---

struct lemma_n_options {
    bool force = false;        // run the main checks past failed preconditions
    int exhaustive_limit = 16; // all subsets of N(v) up to this degree
    int sampled_subsets = 64;  // random probe subsets beyond it
    uint64_t seed = 1;
    long long budget = default_node_budget;
};

namespace detail {

// 2 e(M) < 2k |M|, evaluated in integers.
inline bool density_below(const graph& g, const std::vector<int>& members, int k) {
    long long e2 = 0;
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            if (g.adjacent(members[i], members[j])) e2 += 2;
    return e2 < 2LL * k * static_cast<long long>(members.size());
}

} // namespace detail

// Per-vertex neighbourhood-density probe (all M <= N(v) exhausted at small
// degree, sampled beyond) and the 5k^2 common-neighbourhood bound for pairs
// joined by a short odd walk.
inline certificate_report check_lemma_n(const graph& g, int k, const rational& eps,
                                        const lemma_n_options& opt = {}) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (!(eps > rational(0))) throw std::invalid_argument("eps must be positive");
    certificate_report rep;
    rep.subject = "neighbourhood-lemma";

    node_budget budget(opt.budget);
    parity_distance_table pdt(g);
    int n = g.order();

    auto free_check = contains_cycle(g, 2 * k - 1, budget, &pdt);
    rep.add("pre/c2k1-free", "G has no cycle of length 2k-1",
            check_status_of(free_check.status, /*found_is_pass=*/false),
            free_check.found() ? nlohmann::ordered_json{{"cycle", *free_check.witness}}
                               : nlohmann::ordered_json{});
    bool pre_n = rational(n) >= rational(4 * k) / eps;
    rep.add("pre/order", "n >= 4k/eps", pre_n,
            {{"n", n}, {"bound", (rational(4 * k) / eps).str()}});
    rational ratio = n > 0 ? min_degree_ratio(g) : rational(0);
    rational need = rational(1, 2 * k - 1) + eps;
    bool pre_deg = n > 0 && ratio >= need;
    rep.add("pre/min-degree", "delta(G) >= (1/(2k-1) + eps) n", pre_deg,
            {{"ratio", ratio.str()}, {"bound", need.str()}});

    bool pre_ok = rep.all_pass();
    if (!pre_ok && !opt.force) {
        rep.add("main/skipped", "main checks skipped: preconditions failed (use force to override)",
                check_status::fail);
        return rep;
    }

    // (i) d(M) < 2k for probe subsets M of each neighbourhood
    std::mt19937_64 rng(opt.seed);
    bool density_ok = true;
    nlohmann::ordered_json density_witness;
    long long subsets_checked = 0;
    bool any_sampled = false;
    for (int v = 0; v < n && density_ok; ++v) {
        auto nb = g.neighbors(v).to_vector();
        int d = static_cast<int>(nb.size());
        if (d == 0) continue;
        if (d <= opt.exhaustive_limit) {
            // incremental e(M) over the subset lattice
            std::vector<long long> e2(size_t{1} << d, 0);
            std::vector<bitset> adj_in(d, bitset(d));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (i != j && g.adjacent(nb[i], nb[j])) adj_in[i].set(j);
            for (uint32_t mask = 1; mask < (uint32_t{1} << d); ++mask) {
                int low = std::countr_zero(mask);
                uint32_t restm = mask & (mask - 1);
                long long extra = 0;
                for (int j = 0; j < d; ++j)
                    if ((restm >> j & 1) && adj_in[low].test(j)) ++extra;
                e2[mask] = e2[restm] + 2 * extra;
                ++subsets_checked;
                long long sz = std::popcount(mask);
                if (e2[mask] >= 2LL * k * sz) {
                    density_ok = false;
                    std::vector<int> members;
                    for (int j = 0; j < d; ++j)
                        if (mask >> j & 1) members.push_back(nb[j]);
                    density_witness = {{"v", v}, {"M", members},
                                       {"2e(M)", e2[mask]}, {"2k|M|", 2LL * k * sz}};
                    break;
                }
            }
        } else {
            any_sampled = true;
            auto probe = [&](const std::vector<int>& members) {
                ++subsets_checked;
                if (members.empty()) return true;
                if (!detail::density_below(g, members, k)) {
                    density_ok = false;
                    density_witness = {{"v", v}, {"M", members}};
                    return false;
                }
                return true;
            };
            if (!probe(nb)) break;
            for (int s = 0; s < opt.sampled_subsets && density_ok; ++s) {
                std::vector<int> members;
                for (int x : nb)
                    if (rng() & 1) members.push_back(x);
                probe(members);
            }
        }
    }
    rep.add("subset-density",
            "2e(M)/|M| < 2k for every probed subset M of every neighbourhood",
            density_ok,
            {{"regime", any_sampled ? "exhaustive+sampled" : "exhaustive"},
             {"subsets_checked", subsets_checked},
             {"witness", density_witness}});

    // (ii) pairs joined by an odd walk of length <= 2k-3 share < 5k^2 neighbours
    bool common_ok = true;
    nlohmann::ordered_json common_witness;
    long long pairs_checked = 0;
    for (int u = 0; u < n && common_ok; ++u)
        for (int v = u + 1; v < n; ++v) {
            int d = pdt.odd(u, v);
            if (d == unreachable || d > 2 * k - 3) continue;
            ++pairs_checked;
            int common = g.neighbors(u).intersection_count(g.neighbors(v));
            if (common >= 5 * k * k) {
                common_ok = false;
                common_witness = {{"u", u}, {"v", v}, {"odd_distance", d},
                                  {"common_neighbours", common}, {"bound", 5 * k * k}};
                break;
            }
        }
    rep.add("common-neighbours",
            "pairs joined by an odd walk of length <= 2k-3 have fewer than 5k^2 common neighbours",
            common_ok, {{"pairs_checked", pairs_checked}, {"witness", common_witness}});
    return rep;
}

// Disjoint first/second neighbourhood system around a short odd cycle,
// built greedily in vertex-id order.
struct disjoint_neighborhood_system {
    std::vector<int> cycle;
    std::vector<std::vector<int>> m_sets;  // M_i <= N(c_i) \ V(C)
    std::vector<int> m_reps;               // m_i in M_i
    std::vector<std::vector<int>> l_sets;  // L_i <= N(m_i) \ V(C)
};

struct disjoint_system_outcome {
    certificate_report report;
    std::optional<disjoint_neighborhood_system> system;
};

inline disjoint_system_outcome build_disjoint_system(const graph& g, int k,
                                                     const rational& eps,
                                                     const std::vector<int>& cycle) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    int len = static_cast<int>(cycle.size());
    if (len % 2 == 0 || len >= 2 * k - 1)
        throw std::invalid_argument("cycle length must be odd and below 2k-1");
    if (!is_cycle_of(g, cycle)) throw std::invalid_argument("not a cycle of the graph");

    disjoint_system_outcome out;
    auto& rep = out.report;
    rep.subject = "disjoint-neighbourhood-system";
    int n = g.order();

    node_budget budget(default_node_budget);
    auto free_check = contains_cycle(g, 2 * k - 1, budget);
    rep.add("pre/c2k1-free", "G has no cycle of length 2k-1",
            check_status_of(free_check.status, false));
    rep.add("pre/order", "n >= 20k^3/eps",
            rational(n) >= rational(20 * k * k * k) / eps,
            {{"n", n}, {"bound", (rational(20 * k * k * k) / eps).str()}});
    rational need = rational(1, 2 * k - 1) + eps;
    rep.add("pre/min-degree", "delta(G) >= (1/(2k-1) + eps) n",
            n > 0 && min_degree_ratio(g) >= need);

    bitset on_cycle_set(n);
    for (int c : cycle) on_cycle_set.set(c);

    // M_i: neighbourhoods off the cycle, shared vertices discarded from all
    std::vector<bitset> m(len, bitset(n));
    for (int i = 0; i < len; ++i) {
        m[i] = g.neighbors(cycle[i]);
        m[i].subtract(on_cycle_set);
    }
    auto discard_shared = [&](std::vector<bitset>& sets) {
        for (int v = 0; v < n; ++v) {
            int holders = 0;
            for (auto& s : sets)
                if (s.test(v) && ++holders > 1) break;
            if (holders > 1)
                for (auto& s : sets) s.reset(v);
        }
    };
    discard_shared(m);

    rational quota = rational(n, 2 * k - 1);
    auto first_short = [&](const std::vector<bitset>& sets, const char* tag) -> std::string {
        for (int i = 0; i < len; ++i)
            if (rational(sets[i].count()) < quota)
                return std::string(tag) + "_" + std::to_string(i + 1) + " has " +
                       std::to_string(sets[i].count()) + " < " + quota.str();
        return {};
    };

    std::string shortfall = first_short(m, "M");
    std::vector<int> reps(len, -1);
    std::vector<bitset> l(len, bitset(n));
    if (shortfall.empty()) {
        for (int i = 0; i < len; ++i) reps[i] = m[i].next(0);
        for (int i = 0; i < len; ++i) {
            l[i] = g.neighbors(reps[i]);
            l[i].subtract(on_cycle_set);
        }
        discard_shared(l);
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j) l[i].subtract(m[j]);
        shortfall = first_short(l, "L");
    } else {
        // report the M shortfall; pick representatives only when possible
    }

    rep.add("system", "2l mutually disjoint sets, each of size >= n/(2k-1)",
            shortfall.empty(),
            shortfall.empty() ? nlohmann::ordered_json{{"quota", quota.str()}}
                              : nlohmann::ordered_json{{"shortfall", shortfall}});

    if (shortfall.empty()) {
        disjoint_neighborhood_system sys;
        sys.cycle = cycle;
        sys.m_reps = reps;
        for (int i = 0; i < len; ++i) {
            sys.m_sets.push_back(m[i].to_vector());
            sys.l_sets.push_back(l[i].to_vector());
        }
        out.system = std::move(sys);
    }
    return out;
}

} // namespace oddhom
