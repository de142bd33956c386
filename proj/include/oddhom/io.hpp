#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oddhom/graph.hpp"

namespace oddhom {

struct parse_error : std::runtime_error {
    parse_error(const std::string& what, size_t offset)
        : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
    size_t byte_offset;
};

enum class graph_format { edgelist, graph6 };

inline graph_format parse_format(const std::string& s) {
    if (s == "edgelist") return graph_format::edgelist;
    if (s == "graph6" || s == "g6") return graph_format::graph6;
    throw std::invalid_argument("unknown format '" + s + "'");
}

// --- edge-list text: first line n, then one "u v" line per edge ---

inline std::string encode_edgelist(const graph& g) {
    std::ostringstream os;
    os << g.order() << "\n";
    for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
    return os.str();
}

inline graph decode_edgelist(const std::string& text, int max_order = default_max_order) {
    std::istringstream is(text);
    auto offset_now = [&]() -> size_t {
        auto p = is.tellg();
        return p < 0 ? text.size() : static_cast<size_t>(p);
    };
    long long n;
    if (!(is >> n)) throw parse_error("edgelist: missing or malformed vertex count", 0);
    if (n < 0) throw parse_error("edgelist: negative vertex count", 0);
    std::vector<std::pair<int, int>> edges;
    while (true) {
        is >> std::ws;
        size_t at = offset_now();
        long long u, v;
        if (!(is >> u)) {
            if (is.eof()) break;
            throw parse_error("edgelist: malformed endpoint", at);
        }
        is >> std::ws;
        size_t at2 = offset_now();
        if (!(is >> v)) throw parse_error("edgelist: dangling endpoint", at2);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw parse_error("edgelist: endpoint out of range", at);
        if (u == v) throw parse_error("edgelist: self-loop", at);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return graph(static_cast<int>(n), edges, max_order);
}

// --- graph6: standard bit-packed format for simple undirected graphs ---

inline std::string encode_graph6(const graph& g) {
    std::string out;
    int n = g.order();
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        // 3-byte size field covers n <= 258047, far beyond the order cap.
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int group = 0, nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            group = (group << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(group + 63));
                group = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(static_cast<char>((group << (6 - nbits)) + 63));
    return out;
}

inline graph decode_graph6(const std::string& text, int max_order = default_max_order) {
    // Strip the optional header and trailing newline nauty tools emit.
    size_t pos = 0;
    if (text.rfind(">>graph6<<", 0) == 0) pos = 10;
    size_t end = text.size();
    while (end > pos && (text[end - 1] == '\n' || text[end - 1] == '\r')) --end;

    auto byte_at = [&](size_t i) -> int {
        if (i >= end) throw parse_error("graph6: truncated input", i);
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < 63 || c > 126) throw parse_error("graph6: byte out of printable range", i);
        return c - 63;
    };

    long long n;
    if (byte_at(pos) == 63) {  // '~'
        if (pos + 1 < end && static_cast<unsigned char>(text[pos + 1]) == 126)
            throw parse_error("graph6: 8-byte size field unsupported at this order cap",
                              pos + 1);
        n = (static_cast<long long>(byte_at(pos + 1)) << 12) |
            (byte_at(pos + 2) << 6) | byte_at(pos + 3);
        pos += 4;
    } else {
        n = byte_at(pos);
        pos += 1;
    }

    std::vector<std::pair<int, int>> edges;
    int group = 0, nbits = 0;
    size_t at = pos;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (nbits == 0) {
                group = byte_at(at);
                ++at;
                nbits = 6;
            }
            if (group & (1 << (nbits - 1))) edges.emplace_back(i, j);
            --nbits;
        }
    if (at != end) throw parse_error("graph6: trailing bytes", at);
    return graph(static_cast<int>(n), edges, max_order);
}

inline std::string encode(const graph& g, graph_format fmt) {
    return fmt == graph_format::edgelist ? encode_edgelist(g) : encode_graph6(g);
}

inline graph decode(const std::string& text, graph_format fmt,
                    int max_order = default_max_order) {
    return fmt == graph_format::edgelist ? decode_edgelist(text, max_order)
                                         : decode_graph6(text, max_order);
}

inline graph read_graph_file(const std::string& path, graph_format fmt,
                             int max_order = default_max_order) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return decode(ss.str(), fmt, max_order);
}

inline void write_graph_file(const std::string& path, const graph& g, graph_format fmt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << encode(g, fmt);
    if (fmt == graph_format::graph6) out << "\n";
}

} // namespace oddhom
