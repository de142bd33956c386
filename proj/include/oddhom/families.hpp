#pragma once

#include <vector>

#include "oddhom/graph.hpp"

namespace oddhom {

inline graph cycle_graph(int n) {
    if (n <= 1) return graph(n, {});
    if (n == 2) return graph(2, {{0, 1}});
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return graph(n, edges);
}

inline graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return graph(n, edges);
}

inline graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return graph(n, edges);
}

// Sides 0..s-1 and s..s+t-1.
inline graph complete_bipartite(int s, int t) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < t; ++j) edges.emplace_back(i, s + j);
    return graph(s + t, edges);
}

} // namespace oddhom
