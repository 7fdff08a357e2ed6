#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tw2k/graph.hpp"

namespace tw2k {
namespace oracle {

// Bitmask graphs for exhaustive work; the only virtue of everything in this
// namespace is obvious correctness at desk scale.
struct MaskGraph {
    int n = 0;
    std::vector<std::uint64_t> adj;       // adj[i] over compact indices
    std::vector<Vertex> label;            // index -> original vertex id
};

inline MaskGraph to_mask(const Graph& g) {
    require(g.vertex_count() <= 60, "oracle: graph too large");
    MaskGraph m;
    std::map<Vertex, int> idx;
    for (Vertex v : g.vertices()) {
        idx[v] = m.n++;
        m.label.push_back(v);
    }
    m.adj.assign(m.n, 0);
    for (const Edge& e : g.edges()) {
        m.adj[idx[e.first]] |= 1ull << idx[e.second];
        m.adj[idx[e.second]] |= 1ull << idx[e.first];
    }
    return m;
}

// Self-contained low-degree elimination on a vertex subset, independent of
// the production recognizer.
inline bool tw_le2_mask(const MaskGraph& g, std::uint64_t alive) {
    std::vector<std::uint64_t> adj = g.adj;
    bool progress = true;
    while (alive && progress) {
        progress = false;
        for (int v = 0; v < g.n; ++v) {
            if (!(alive >> v & 1)) continue;
            std::uint64_t nb = adj[v] & alive;
            int d = __builtin_popcountll(nb);
            if (d > 2) continue;
            alive &= ~(1ull << v);
            if (d == 2) {
                int a = __builtin_ctzll(nb);
                int b = 63 - __builtin_clzll(nb);
                adj[a] |= 1ull << b;
                adj[b] |= 1ull << a;
            }
            progress = true;
        }
    }
    return alive == 0;
}

inline bool tw_le2_mask(const MaskGraph& g) {
    return tw_le2_mask(g, g.n == 64 ? ~0ull : (1ull << g.n) - 1);
}

namespace detail {

inline bool mask_connected(const MaskGraph& g, std::uint64_t s) {
    if (!s) return false;
    std::uint64_t seen = s & (~s + 1);  // lowest bit
    while (true) {
        std::uint64_t grow = seen;
        for (int v = 0; v < g.n; ++v)
            if (seen >> v & 1) grow |= g.adj[v] & s;
        if (grow == seen) break;
        seen = grow;
    }
    return seen == s;
}

inline bool mask_touch(const MaskGraph& g, std::uint64_t a, std::uint64_t b) {
    for (int v = 0; v < g.n; ++v)
        if (a >> v & 1 && (g.adj[v] & b)) return true;
    return false;
}

// Assignment search for a K4 minor model: vertices take labels 0 (unused) or
// 1..4; classes are opened in canonical order to cut the 4! symmetry.
inline bool k4_search(const MaskGraph& g, int v, int opened, std::uint64_t parts[4]) {
    if (v == g.n) {
        for (int i = 0; i < 4; ++i)
            if (!parts[i] || !mask_connected(g, parts[i])) return false;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (!mask_touch(g, parts[i], parts[j])) return false;
        return true;
    }
    if (g.n - v < 4 - opened) return false;  // not enough vertices left
    if (k4_search(g, v + 1, opened, parts)) return true;
    int lim = std::min(opened + 1, 4);
    for (int c = 0; c < lim; ++c) {
        parts[c] |= 1ull << v;
        if (k4_search(g, v + 1, std::max(opened, c + 1), parts)) return true;
        parts[c] &= ~(1ull << v);
    }
    return false;
}

}  // namespace detail

// Exhaustive K4-minor detection by enumerating branch-set assignments.
inline bool k4_minor_brute(const Graph& g) {
    require(g.vertex_count() <= 12, "k4_minor_brute: too large");
    MaskGraph m = to_mask(g);
    std::uint64_t parts[4] = {0, 0, 0, 0};
    return detail::k4_search(m, 0, 0, parts);
}

struct OracleResult {
    std::size_t minimum;       // size of a minimum modulator (<= cap)
    VertexSet one_solution;    // lexicographically first minimum modulator
};

// Exhaustive subset sweep in increasing size, lexicographic within a size.
inline std::optional<OracleResult> exact_tw2d(const Graph& g, std::size_t cap) {
    MaskGraph m = to_mask(g);
    std::uint64_t full = m.n == 64 ? ~0ull : (1ull << m.n) - 1;
    std::vector<int> pick;
    // Enumerates index subsets of size k in lexicographic order.
    auto sweep = [&](auto&& self, std::size_t k, int from, std::uint64_t removed)
        -> std::optional<std::uint64_t> {
        if (pick.size() == k)
            return tw_le2_mask(m, full & ~removed) ? std::optional<std::uint64_t>(removed)
                                                   : std::nullopt;
        for (int v = from; v < m.n; ++v) {
            pick.push_back(v);
            auto r = self(self, k, v + 1, removed | (1ull << v));
            pick.pop_back();
            if (r) return r;
        }
        return std::nullopt;
    };
    for (std::size_t k = 0; k <= cap && k <= static_cast<std::size_t>(m.n); ++k) {
        auto r = sweep(sweep, k, 0, 0);
        if (r) {
            OracleResult res;
            res.minimum = k;
            for (int v = 0; v < m.n; ++v)
                if (*r >> v & 1) res.one_solution.insert(m.label[v]);
            return res;
        }
    }
    return std::nullopt;  // exceeds cap
}

// Minimum modulator size with no cap (cap = n always succeeds).
inline std::size_t tw2d(const Graph& g) {
    return exact_tw2d(g, g.vertex_count())->minimum;
}

// All vertex sets S with |S| <= t and tw(G - S) <= 2.
inline std::vector<VertexSet> all_solutions(const Graph& g, std::size_t t) {
    MaskGraph m = to_mask(g);
    std::uint64_t full = m.n == 64 ? ~0ull : (1ull << m.n) - 1;
    std::vector<VertexSet> out;
    auto sweep = [&](auto&& self, std::size_t k, int from, std::uint64_t removed) -> void {
        if (__builtin_popcountll(removed) == static_cast<int>(k)) {
            if (tw_le2_mask(m, full & ~removed)) {
                VertexSet s;
                for (int v = 0; v < m.n; ++v)
                    if (removed >> v & 1) s.insert(m.label[v]);
                out.push_back(std::move(s));
            }
            return;
        }
        for (int v = from; v < m.n; ++v) self(self, k, v + 1, removed | (1ull << v));
    };
    for (std::size_t k = 0; k <= t && k <= static_cast<std::size_t>(m.n); ++k)
        sweep(sweep, k, 0, 0);
    return out;
}

// Answer-equivalence of two instances: (TW2D(G1) <= t1) == (TW2D(G2) <= t2).
inline bool yes_instance(const Graph& g, std::size_t t) {
    return exact_tw2d(g, t).has_value();
}

}  // namespace oracle
}  // namespace tw2k
