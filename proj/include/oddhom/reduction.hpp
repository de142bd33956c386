#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "oddhom/cycle_analysis.hpp"
#include "oddhom/graph.hpp"
#include "oddhom/homomorphism.hpp"
#include "oddhom/rational.hpp"
#include "oddhom/report.hpp"

namespace oddhom {

// Operative parameters of the reduction pipeline. The closed-form values
// the analysis would use (cover size, class floor, the iterated-exponential
// image bound) are astronomically conservative; they are computed for the
// report while the pipeline runs on the values supplied here, and the
// output is verified directly instead of trusted to the bounds.
struct reduction_params {
    int k;
    rational eps;
    int m;
    int rounds = 0;            // 0 -> 2k
    long long class_min = 0;   // 0 -> ceil(8k/eps)
    uint64_t seed = 1;
    int cover_retries = 32;
    long long budget = default_node_budget;

    reduction_params(int k_, rational eps_, int m_) : k(k_), eps(std::move(eps_)), m(m_) {
        if (k < 3) throw std::invalid_argument("reduction requires k >= 3");
        rational two_over_eps = rational(2) / eps;
        if (!(eps > rational(0)) || !two_over_eps.is_integer() || two_over_eps.num() < 1)
            throw std::invalid_argument("2/eps must be a positive integer");
        if (m < 4 * k) throw std::invalid_argument("cover size must be at least 4k");
    }

    long long quantization() const { return (rational(2) / eps).num(); }  // 2/eps
    int effective_rounds() const { return rounds > 0 ? rounds : 2 * k; }
    long long effective_class_min() const {
        return class_min > 0 ? class_min : (rational(8 * k) / eps).ceil();
    }
};

struct cover_set {
    std::vector<int> x;                       // |X| = m
    std::vector<char> in_y;                   // |N(v) cap X| >= 4k
    std::vector<std::vector<int>> assigned;   // X(y): least 4k-subset of N(y) cap X
    int outside_y = 0;
    bool meets_bound = false;                 // |V \ Y| <= eps n / 3
    std::string strategy;                     // "greedy" or "random"
};

namespace detail {

inline void finish_cover(const graph& g, int needed, cover_set& cs) {
    int n = g.order();
    bitset xset(n);
    for (int v : cs.x) xset.set(v);
    cs.in_y.assign(n, 0);
    cs.assigned.assign(n, {});
    cs.outside_y = 0;
    for (int v = 0; v < n; ++v) {
        if (g.neighbors(v).intersection_count(xset) >= needed) {
            cs.in_y[v] = 1;
            auto& a = cs.assigned[v];
            const bitset& nb = g.neighbors(v);
            for (int x = nb.next(0); x >= 0 && static_cast<int>(a.size()) < needed;
                 x = nb.next(x + 1))
                if (xset.test(x)) a.push_back(x);
        } else {
            ++cs.outside_y;
        }
    }
}

} // namespace detail

// Deterministic greedy cover: repeatedly add the vertex that supplies a
// needed X-neighbour to the most not-yet-covered vertices. Falls back to
// seeded random m-sets when the greedy set leaves more than eps n / 3
// vertices short; the best attempt is returned either way.
inline cover_set select_cover_set(const graph& g, const reduction_params& p) {
    int n = g.order();
    if (p.m > n) throw std::invalid_argument("cover size exceeds vertex count");
    int needed = 4 * p.k;
    rational allowance = p.eps * rational(n) / rational(3);

    cover_set greedy;
    greedy.strategy = "greedy";
    {
        std::vector<char> in_x(n, 0);
        std::vector<int> sat(n, 0);
        bitset unsat(n);
        unsat.set_all();
        for (int round = 0; round < p.m; ++round) {
            int best = -1, best_score = -1;
            for (int x = 0; x < n; ++x) {
                if (in_x[x]) continue;
                int score = g.neighbors(x).intersection_count(unsat);
                if (score > best_score) {
                    best = x;
                    best_score = score;
                }
            }
            in_x[best] = 1;
            greedy.x.push_back(best);
            g.neighbors(best).for_each([&](int v) {
                if (++sat[v] >= needed) unsat.reset(v);
            });
        }
        std::sort(greedy.x.begin(), greedy.x.end());
        detail::finish_cover(g, needed, greedy);
        greedy.meets_bound = rational(greedy.outside_y) <= allowance;
    }
    if (greedy.meets_bound) return greedy;

    cover_set best = greedy;
    std::mt19937_64 rng(p.seed);
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int retry = 0; retry < p.cover_retries; ++retry) {
        for (int i = 0; i < p.m; ++i) {
            std::uniform_int_distribution<int> pick(i, n - 1);
            std::swap(ids[i], ids[pick(rng)]);
        }
        cover_set cand;
        cand.strategy = "random";
        cand.x.assign(ids.begin(), ids.begin() + p.m);
        std::sort(cand.x.begin(), cand.x.end());
        detail::finish_cover(g, needed, cand);
        cand.meets_bound = rational(cand.outside_y) <= allowance;
        if (cand.outside_y < best.outside_y) best = cand;
        if (cand.meets_bound) return cand;
    }
    return best;
}

struct q_partition {
    std::vector<std::vector<int>> classes;  // Q_i, keyed by common X(y), key-sorted
    std::vector<int> class_of;              // vertex -> class index, -1 outside
    long long covered = 0;
    long long class_min_used = 0;
};

// Groups Y by the assigned 4k-subset X(y) and drops classes below the
// class floor.
inline q_partition build_q_partition(const graph& g, const cover_set& cs,
                                     const reduction_params& p) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int v = 0; v < g.order(); ++v)
        if (cs.in_y[v]) groups[cs.assigned[v]].push_back(v);
    q_partition q;
    q.class_min_used = p.effective_class_min();
    q.class_of.assign(g.order(), -1);
    for (auto& [key, members] : groups) {
        if (static_cast<long long>(members.size()) < q.class_min_used) continue;
        int id = static_cast<int>(q.classes.size());
        for (int v : members) q.class_of[v] = id;
        q.covered += static_cast<long long>(members.size());
        q.classes.push_back(std::move(members));
    }
    return q;
}

// mu_i(v) quantized in steps of eps/2: with E = 2/eps integral,
// floor((|N(v) cap Q_i| / |Q_i|) * E) is plain integer division and
// mu_i(v) = steps_i / E.
inline std::vector<int> mu_steps(const graph& g, int v, const q_partition& q,
                                 const std::vector<bitset>& class_bits, long long e_steps) {
    std::vector<int> steps(q.classes.size(), 0);
    for (size_t i = 0; i < q.classes.size(); ++i) {
        long long hits = g.neighbors(v).intersection_count(class_bits[i]);
        steps[i] = static_cast<int>(hits * e_steps /
                                    static_cast<long long>(q.classes[i].size()));
    }
    return steps;
}

inline std::vector<rational> mu_vector(const graph& g, int v, const q_partition& q,
                                       const rational& eps) {
    long long e_steps = (rational(2) / eps).num();
    std::vector<bitset> class_bits;
    for (const auto& cls : q.classes) {
        bitset b(g.order());
        for (int u : cls) b.set(u);
        class_bits.push_back(std::move(b));
    }
    auto steps = mu_steps(g, v, q, class_bits, e_steps);
    std::vector<rational> out;
    out.reserve(steps.size());
    for (int s : steps) out.emplace_back(s, e_steps);
    return out;
}

// One refinement round: vertices stay together iff they were together and
// their neighbourhoods touch the same classes. Output ids are normalized
// by first occurrence, so a fixed point reproduces its input exactly.
inline std::vector<int> refine_once(const graph& g, const std::vector<int>& part) {
    int n = g.order();
    if (static_cast<int>(part.size()) != n)
        throw std::invalid_argument("partition must cover every vertex");
    for (int c : part)
        if (c < 0) throw std::invalid_argument("partition ids must be non-negative");

    std::vector<std::pair<int, std::vector<int>>> sig(n);
    std::vector<char> seen(part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1, 0);
    for (int v = 0; v < n; ++v) {
        std::vector<int> touched;
        g.neighbors(v).for_each([&](int w) {
            if (!seen[part[w]]) {
                seen[part[w]] = 1;
                touched.push_back(part[w]);
            }
        });
        for (int c : touched) seen[c] = 0;
        std::sort(touched.begin(), touched.end());
        sig[v] = {part[v], std::move(touched)};
    }
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<int> out(n);
    for (int v = 0; v < n; ++v) {
        auto [it, fresh] = ids.try_emplace(sig[v], static_cast<int>(ids.size()));
        out[v] = it->second;
    }
    return out;
}

inline int partition_class_count(const std::vector<int>& part) {
    return part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
}

// The chain R^0 >= R^1 >= ... >= R^rounds; refinement stops early at a
// fixed point and levels beyond the stop round coincide with the last one.
struct refinement_trace {
    int logical_rounds = 0;
    std::vector<std::vector<int>> levels;  // levels[j] = R^j (normalized ids)
    std::vector<int> class_counts;
    int stabilized_at = -1;                // round index of the fixed point, -1 if none

    const std::vector<int>& level(int j) const {
        if (j < 0) throw std::out_of_range("negative refinement level");
        size_t idx = std::min(static_cast<size_t>(j), levels.size() - 1);
        return levels[idx];
    }
};

struct reduced_graph {
    graph h;
    std::vector<int> quotient;                    // vertex -> class of R^rounds
    std::vector<std::vector<int>> class_members;  // per H-vertex
};

struct reduction_result {
    reduction_params params;
    cover_set cover;
    q_partition q;
    std::vector<std::vector<int>> mu;  // per-vertex quantized steps
    refinement_trace trace;
    reduced_graph reduced;
};

struct reduction_outcome {
    certificate_report report;
    std::optional<reduction_result> result;
};

namespace detail {

// Exact search for an odd simple path of length <= maxlen between u and v.
inline bool exists_odd_path_upto(const graph& g, int u, int v, int maxlen,
                                 const parity_distance_table& pdt, node_budget& budget,
                                 bool& aborted) {
    int d = pdt.odd(u, v);
    if (d == unreachable || d > maxlen) return false;  // no odd walk, so no odd path
    std::vector<char> used(g.order(), 0);
    std::vector<int> path{u};
    used[u] = 1;
    auto dfs = [&](auto&& self) -> bool {
        if (!budget.tick()) {
            aborted = true;
            return false;
        }
        int cur = path.back();
        int len = static_cast<int>(path.size()) - 1;
        if (cur == v) return len % 2 == 1;  // a simple path cannot revisit v
        if (len >= maxlen) return false;
        int rem = maxlen - len;
        // the completion must flip the current parity to odd within rem edges
        int d = pdt.dist(cur, v, (len & 1) ^ 1);
        if (d == unreachable || d > rem) return false;
        const bitset& nb = g.neighbors(cur);
        for (int w = nb.next(0); w >= 0; w = nb.next(w + 1)) {
            if (used[w]) continue;
            used[w] = 1;
            path.push_back(w);
            if (self(self)) return true;
            path.pop_back();
            used[w] = 0;
            if (aborted) return false;
        }
        return false;
    };
    return dfs(dfs);
}

inline long long binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

} // namespace detail

// Reference values from the analysis, reported alongside the operative
// parameters.
inline nlohmann::ordered_json reduction_reference_values(const reduction_params& p) {
    long double e = static_cast<long double>(p.eps.num()) / p.eps.den();
    long double m_formula = std::ceil(2.0L * std::log(3.0L / e) / (e * e));
    long long m_ref = std::max<long long>(static_cast<long long>(m_formula),
                                          8LL * p.k * p.k);
    long long choose = detail::binomial(p.m, 4 * p.k);
    long double base_log2 = choose * std::log2(static_cast<long double>(p.quantization() + 1));
    nlohmann::ordered_json j;
    j["m_reference"] = m_ref;
    j["class_min_reference"] = (rational(8 * p.k) / p.eps).ceil();
    j["image_bound"] = {
        {"description", "x -> x*2^x iterated 2k times on (2/eps + 1)^binomial(m, 4k)"},
        {"tower_height", 2 * p.k},
        {"binomial_m_4k", choose},
        {"base_log2", static_cast<double>(base_log2)},
    };
    return j;
}

// The full pipeline: cover set, Q-partition, mu-vectors, 2k refinement
// rounds, reduced graph, then direct verification of everything the
// construction promises.
inline reduction_outcome reduce(const graph& g, const reduction_params& p) {
    reduction_outcome out;
    auto& rep = out.report;
    rep.subject = "reduction";
    int n = g.order();
    int k = p.k;
    long long e_steps = p.quantization();
    rep.params = {{"k", k},
                  {"eps", p.eps.str()},
                  {"m", p.m},
                  {"rounds", p.effective_rounds()},
                  {"class_min", p.effective_class_min()},
                  {"seed", p.seed},
                  {"reference", reduction_reference_values(p)}};
    rep.params["size_preconditions"] = {
        {"n_ge_4k_over_eps", rational(n) >= rational(4 * k) / p.eps},
        {"n_ge_20k3_over_eps", rational(n) >= rational(20 * k * k * k) / p.eps},
    };

    node_budget budget(p.budget);
    parity_distance_table pdt(g);

    auto free_check = contains_cycle(g, 2 * k - 1, budget, &pdt);
    rep.add("pre/c2k1-free", "G has no cycle of length 2k-1",
            check_status_of(free_check.status, false),
            free_check.found() ? nlohmann::ordered_json{{"cycle", *free_check.witness}}
                               : nlohmann::ordered_json{});
    rational need = rational(1, 2 * k - 1) + p.eps;
    rational ratio = n > 0 ? min_degree_ratio(g) : rational(0);
    rep.add("pre/min-degree", "delta(G) >= (1/(2k-1) + eps) n", n > 0 && ratio >= need,
            {{"ratio", ratio.str()}, {"bound", need.str()}});
    if (!rep.all_pass()) return out;

    reduction_result res{p, {}, {}, {}, {}, {}};

    // cover set
    res.cover = select_cover_set(g, p);
    rep.add("stage/cover",
            "all but at most eps n / 3 vertices have at least 4k neighbours in X",
            res.cover.meets_bound,
            {{"strategy", res.cover.strategy},
             {"outside_y", res.cover.outside_y},
             {"allowance", (p.eps * rational(n) / rational(3)).str()}});
    if (!res.cover.meets_bound) return out;

    // Q-partition
    res.q = build_q_partition(g, res.cover, p);
    bool q_nonempty = !res.q.classes.empty();
    rational q_bound = rational(n) - p.eps * rational(n) / rational(2);
    rep.add("stage/q-partition", "grouping Y by X(y) leaves a non-empty partition",
            q_nonempty,
            {{"classes", res.q.classes.size()},
             {"covered", res.q.covered},
             {"coverage_target", q_bound.str()},
             {"covered_exceeds_target", rational(res.q.covered) > q_bound}});
    if (!q_nonempty) return out;

    // mu-vectors
    std::vector<bitset> class_bits;
    for (const auto& cls : res.q.classes) {
        bitset b(n);
        for (int u : cls) b.set(u);
        class_bits.push_back(std::move(b));
    }
    res.mu.resize(n);
    for (int v = 0; v < n; ++v) res.mu[v] = mu_steps(g, v, res.q, class_bits, e_steps);

    // mu positivity forces at least 4k neighbours in the class
    {
        bool ok = true;
        nlohmann::ordered_json witness;
        for (int v = 0; v < n && ok; ++v)
            for (size_t i = 0; i < res.q.classes.size(); ++i)
                if (res.mu[v][i] > 0 &&
                    g.neighbors(v).intersection_count(class_bits[i]) < 4 * k) {
                    ok = false;
                    witness = {{"v", v}, {"class", i}};
                    break;
                }
        rep.add("mu-support", "mu_i(v) > 0 implies |N(v) cap Q_i| >= 4k", ok, witness);
    }

    // R^0 from equal mu-vectors
    refinement_trace& trace = res.trace;
    trace.logical_rounds = p.effective_rounds();
    {
        std::map<std::vector<int>, int> ids;
        std::vector<int> r0(n);
        for (int v = 0; v < n; ++v) {
            auto [it, fresh] = ids.try_emplace(res.mu[v], static_cast<int>(ids.size()));
            r0[v] = it->second;
        }
        trace.levels.push_back(std::move(r0));
        trace.class_counts.push_back(partition_class_count(trace.levels[0]));
    }
    for (int round = 1; round <= trace.logical_rounds; ++round) {
        auto next = refine_once(g, trace.levels.back());
        if (next == trace.levels.back()) {
            trace.stabilized_at = round - 1;
            break;
        }
        trace.class_counts.push_back(partition_class_count(next));
        trace.levels.push_back(std::move(next));
    }
    rep.add("stage/refine", "refinement chain computed",
            true,
            {{"rounds_run", trace.levels.size() - 1},
             {"class_counts", trace.class_counts},
             {"stabilized_at", trace.stabilized_at}});

    // (a) final classes independent
    const std::vector<int>& final_part = trace.levels.back();
    int classes = partition_class_count(final_part);
    {
        bool ok = true;
        nlohmann::ordered_json witness;
        for (auto [u, v] : g.edges())
            if (final_part[u] == final_part[v]) {
                ok = false;
                witness = {{"class", final_part[u]}, {"edge", {u, v}}};
                break;
            }
        rep.add("independent-classes", "every final refinement class is independent in G",
                ok, witness);
        if (!ok) return out;  // the quotient would not be a homomorphism
    }

    // reduced graph and quotient
    {
        std::vector<std::pair<int, int>> h_edges;
        for (auto [u, v] : g.edges())
            h_edges.emplace_back(final_part[u], final_part[v]);
        res.reduced.h = graph(classes, h_edges);
        res.reduced.quotient = final_part;
        res.reduced.class_members.assign(classes, {});
        for (int v = 0; v < n; ++v) res.reduced.class_members[final_part[v]].push_back(v);
    }

    // (b) quotient is a homomorphism
    rep.add("quotient-homomorphism", "the class map G -> H preserves every edge",
            !verify_homomorphism(g, res.reduced.h, res.reduced.quotient).has_value(),
            {{"image_order", classes}});

    // (c) H is C_{2k-1}-free
    auto h_free = contains_cycle(res.reduced.h, 2 * k - 1, budget);
    rep.add("image-c2k1-free", "H has no cycle of length 2k-1",
            check_status_of(h_free.status, false),
            h_free.found() ? nlohmann::ordered_json{{"cycle", *h_free.witness}}
                           : nlohmann::ordered_json{});

    // (d) odd girth carries over when G has no short odd cycle at all
    int og_g = odd_girth(g, pdt);
    if (og_g >= 2 * k + 1) {
        int og_h = odd_girth(res.reduced.h);
        rep.add("image-odd-girth",
                "G has no odd cycle of length <= 2k-1, so neither has H",
                og_h >= 2 * k + 1,
                {{"odd_girth_G", og_g == infinite_length ? nlohmann::ordered_json("infinity")
                                                         : nlohmann::ordered_json(og_g)},
                 {"odd_girth_H", og_h == infinite_length ? nlohmann::ordered_json("infinity")
                                                         : nlohmann::ordered_json(og_h)}});
    }

    // (e) vertices sharing a positive mu-class admit no short odd path
    {
        bool ok = true;
        bool aborted = false;
        nlohmann::ordered_json witness;
        int maxlen = 2 * k - 5;
        for (size_t i = 0; i < res.q.classes.size() && ok && !aborted; ++i) {
            std::vector<int> pos;
            for (int v = 0; v < n; ++v)
                if (res.mu[v][i] > 0) pos.push_back(v);
            for (size_t a = 0; a < pos.size() && ok && !aborted; ++a)
                for (size_t b = a + 1; b < pos.size(); ++b) {
                    if (detail::exists_odd_path_upto(g, pos[a], pos[b], maxlen, pdt,
                                                     budget, aborted)) {
                        ok = false;
                        witness = {{"class", i}, {"u", pos[a]}, {"v", pos[b]}};
                        break;
                    }
                    if (aborted) break;
                }
        }
        rep.add("mu-overlap",
                "no two vertices with mu_i > 0 in a common class are joined by an odd "
                "path of length <= 2k-5",
                aborted ? check_status::abort
                        : (ok ? check_status::pass : check_status::fail),
                witness);
    }

    // (f) quantized degree mass: sum_i mu_i(v) |Q_i| > n / (2k-1)
    {
        bool ok = true;
        nlohmann::ordered_json witness;
        for (int v = 0; v < n && ok; ++v) {
            long long mass = 0;
            for (size_t i = 0; i < res.q.classes.size(); ++i)
                mass += static_cast<long long>(res.mu[v][i]) *
                        static_cast<long long>(res.q.classes[i].size());
            // mass / e_steps > n / (2k-1), cross-multiplied
            if (mass * (2 * k - 1) <= static_cast<long long>(n) * e_steps) {
                ok = false;
                witness = {{"v", v}, {"mass_steps", mass}};
            }
        }
        rep.add("mu-degree-mass", "sum_i mu_i(v) |Q_i| > n/(2k-1) for every vertex", ok,
                witness);
    }

    out.result = std::move(res);
    return out;
}

// Lifts a walk of H into G along the refinement chain: w_1 may be chosen
// anywhere in the final class of h_1 and w_i lands in the level-(rounds-i+1)
// superclass of h_i.
inline walk lift_walk(const graph& g, const reduction_result& res,
                      const std::vector<int>& h_walk,
                      std::optional<int> start = std::nullopt) {
    const auto& trace = res.trace;
    const auto& reduced = res.reduced;
    if (h_walk.empty()) throw std::invalid_argument("empty walk");
    int s = static_cast<int>(h_walk.size());
    if (s - 1 > trace.logical_rounds)
        throw std::invalid_argument("walk longer than the refinement depth");
    for (int h : h_walk)
        if (h < 0 || h >= reduced.h.order())
            throw std::invalid_argument("walk vertex outside H");
    for (int i = 0; i + 1 < s; ++i)
        if (!reduced.h.adjacent(h_walk[i], h_walk[i + 1]))
            throw std::invalid_argument("not a walk of H");

    walk w;
    int first_class = h_walk[0];
    if (start) {
        if (*start < 0 || *start >= static_cast<int>(reduced.quotient.size()) ||
            reduced.quotient[*start] != first_class)
            throw std::invalid_argument("start vertex not in the first class");
        w.vertices.push_back(*start);
    } else {
        w.vertices.push_back(reduced.class_members[first_class].front());
    }
    for (int i = 2; i <= s; ++i) {
        int level = trace.logical_rounds - i + 1;
        const std::vector<int>& part = trace.level(level);
        int target_class = part[reduced.class_members[h_walk[i - 1]].front()];
        int prev = w.vertices.back();
        int next = -1;
        const bitset& nb = g.neighbors(prev);
        for (int cand = nb.next(0); cand >= 0; cand = nb.next(cand + 1))
            if (part[cand] == target_class) {
                next = cand;
                break;
            }
        if (next < 0)
            throw std::logic_error("refinement trace cannot support the lift");
        w.vertices.push_back(next);
    }
    return w;
}

} // namespace oddhom
