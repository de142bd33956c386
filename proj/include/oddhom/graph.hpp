#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oddhom/bitset.hpp"
#include "oddhom/rational.hpp"

namespace oddhom {

// Whole artifact is desk-scale; adjacency is a dense bitset per vertex.
constexpr int default_max_order = 4096;

struct graph_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite simple undirected graph on vertices 0..n-1. Immutable after
// construction; safe to share read-only across threads.
class graph {
public:
    graph() = default;

    graph(int n, const std::vector<std::pair<int, int>>& edges,
          int max_order = default_max_order) {
        if (n < 0) throw graph_error("vertex count must be non-negative");
        if (n > max_order)
            throw graph_error("vertex count " + std::to_string(n) +
                              " exceeds limit " + std::to_string(max_order));
        n_ = n;
        rows_.assign(n, bitset(n));
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw graph_error("edge endpoint out of range: (" + std::to_string(u) +
                                  "," + std::to_string(v) + ")");
            if (u == v)
                throw graph_error("self-loop rejected: (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
            rows_[u].set(v);
            rows_[v].set(u);
        }
        degrees_.resize(n);
        for (int v = 0; v < n; ++v) degrees_[v] = rows_[v].count();
    }

    int order() const { return n_; }

    long long edge_count() const {
        long long twice = 0;
        for (int v = 0; v < n_; ++v) twice += degrees_[v];
        return twice / 2;
    }

    bool adjacent(int u, int v) const { return rows_[u].test(v); }
    int degree(int v) const { return degrees_[v]; }
    const bitset& neighbors(int v) const { return rows_[v]; }

    int min_degree() const {
        if (n_ == 0) return 0;
        return *std::min_element(degrees_.begin(), degrees_.end());
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(edge_count());
        for (int u = 0; u < n_; ++u)
            for (int v = rows_[u].next(u + 1); v >= 0; v = rows_[u].next(v + 1))
                out.emplace_back(u, v);
        return out;
    }

    bool operator==(const graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

private:
    int n_ = 0;
    std::vector<bitset> rows_;
    std::vector<int> degrees_;
};

inline graph make_graph(int n, const std::vector<std::pair<int, int>>& edges,
                        int max_order = default_max_order) {
    return graph(n, edges, max_order);
}

// Blow-up multiplicities, one positive integer per vertex of the base graph.
using vertex_weighting = std::vector<int>;

// Replaces each vertex v by an independent set of w(v) fresh vertices; two
// new vertices are adjacent iff their base vertices were. Copies of base
// vertex v occupy a contiguous id range, in base-vertex order.
inline graph blow_up(const graph& g, const vertex_weighting& w,
                     int max_order = default_max_order) {
    if (static_cast<int>(w.size()) != g.order())
        throw graph_error("weighting must cover every vertex");
    std::vector<int> offset(g.order() + 1, 0);
    for (int v = 0; v < g.order(); ++v) {
        if (w[v] < 1) throw graph_error("blow-up weight must be positive");
        offset[v + 1] = offset[v] + w[v];
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        for (int a = offset[u]; a < offset[u + 1]; ++a)
            for (int b = offset[v]; b < offset[v + 1]; ++b)
                edges.emplace_back(a, b);
    return graph(offset.back(), edges, max_order);
}

inline graph blow_up_uniform(const graph& g, int t, int max_order = default_max_order) {
    return blow_up(g, vertex_weighting(g.order(), t), max_order);
}

// delta(G)/n as an exact rational.
inline rational min_degree_ratio(const graph& g) {
    if (g.order() == 0) throw graph_error("min_degree_ratio on empty graph");
    return rational(g.min_degree(), g.order());
}

// Walk = vertex sequence with consecutive vertices adjacent; length counts
// edges with multiplicity.
struct walk {
    std::vector<int> vertices;

    int length() const { return static_cast<int>(vertices.size()) - 1; }

    bool valid_in(const graph& g) const {
        if (vertices.empty()) return false;
        for (size_t i = 0; i + 1 < vertices.size(); ++i)
            if (!g.adjacent(vertices[i], vertices[i + 1])) return false;
        return true;
    }

    bool is_path() const {
        std::vector<int> s = vertices;
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) == s.end();
    }
};

// True iff `cycle` lists the vertices of a simple cycle of g (no repeated
// vertex, consecutive and wrap-around adjacency).
inline bool is_cycle_of(const graph& g, const std::vector<int>& cycle) {
    size_t len = cycle.size();
    if (len < 3) return false;
    std::vector<int> s = cycle;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    if (s.front() < 0 || s.back() >= g.order()) return false;
    for (size_t i = 0; i < len; ++i)
        if (!g.adjacent(cycle[i], cycle[(i + 1) % len])) return false;
    return true;
}

} // namespace oddhom
