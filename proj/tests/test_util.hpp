#pragma once

#include <vector>

#include "tw2k/gen.hpp"
#include "tw2k/graph.hpp"

namespace testutil {

using namespace tw2k;

// Builds a graph on vertices 1..n with the given edges.
inline Graph make_graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    Graph g;
    for (std::size_t i = 1; i <= n; ++i) g.add_vertex(static_cast<Vertex>(i));
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline Graph path_graph(std::size_t n) {
    Graph g;
    std::vector<Vertex> vs;
    for (std::size_t i = 1; i <= n; ++i) {
        g.add_vertex(static_cast<Vertex>(i));
        vs.push_back(static_cast<Vertex>(i));
        if (i > 1) g.add_edge(vs[i - 2], vs[i - 1]);
    }
    return g;
}

inline Graph cycle_graph(std::size_t n) {
    Graph g = path_graph(n);
    g.add_edge(1, static_cast<Vertex>(n));
    return g;
}

inline Graph complete_graph(std::size_t n) {
    Graph g;
    for (std::size_t i = 1; i <= n; ++i) g.add_vertex(static_cast<Vertex>(i));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return g;
}

// The 2xn grid: rail vertices 1..n and n+1..2n, rungs between them.
inline Graph ladder_graph(std::size_t n) {
    Graph g;
    for (std::size_t i = 1; i <= 2 * n; ++i) g.add_vertex(static_cast<Vertex>(i));
    for (std::size_t i = 1; i < n; ++i) {
        g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
        g.add_edge(static_cast<Vertex>(n + i), static_cast<Vertex>(n + i + 1));
    }
    for (std::size_t i = 1; i <= n; ++i)
        g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(n + i));
    return g;
}

// Brute-force reachability partition, the test-side oracle for components().
inline std::vector<VertexSet> brute_components(const Graph& g) {
    std::vector<VertexSet> out;
    VertexSet left = g.vertices();
    while (!left.empty()) {
        VertexSet comp{*left.begin()};
        bool grew = true;
        while (grew) {
            grew = false;
            for (Vertex v : g.vertices())
                if (!comp.count(v))
                    for (Vertex u : comp)
                        if (g.has_edge(u, v)) {
                            comp.insert(v);
                            grew = true;
                            break;
                        }
        }
        out.push_back(comp);
        left = set_minus(left, comp);
    }
    return out;
}

// All simple x-y paths, by exhaustive DFS; test-side oracle for flow.
inline void all_simple_paths_rec(const Graph& g, Vertex at, Vertex goal, Path& cur, VertexSet& used,
                                 std::vector<Path>& out) {
    if (at == goal) {
        out.push_back(cur);
        return;
    }
    for (Vertex nx : g.neighbors(at)) {
        if (used.count(nx)) continue;
        used.insert(nx);
        cur.push_back(nx);
        all_simple_paths_rec(g, nx, goal, cur, used, out);
        cur.pop_back();
        used.erase(nx);
    }
}

inline std::vector<Path> all_simple_paths(const Graph& g, Vertex x, Vertex y) {
    std::vector<Path> out;
    Path cur{x};
    VertexSet used{x};
    all_simple_paths_rec(g, x, y, cur, used, out);
    return out;
}

// Maximum internally disjoint path count by exhaustive set packing.
inline std::size_t brute_max_disjoint(const Graph& g, Vertex x, Vertex y) {
    std::vector<Path> paths = all_simple_paths(g, x, y);
    std::size_t best = 0;
    std::vector<std::size_t> chosen;
    auto interior = [&](const Path& p) {
        VertexSet s(p.begin() + 1, p.end() - 1);
        return s;
    };
    auto rec = [&](auto&& self, std::size_t from, VertexSet used, std::size_t count) -> void {
        best = std::max(best, count);
        for (std::size_t i = from; i < paths.size(); ++i) {
            VertexSet inner = interior(paths[i]);
            if (!disjoint(inner, used)) continue;
            self(self, i + 1, set_union(used, inner), count + 1);
        }
    };
    rec(rec, 0, {}, 0);
    return best;
}

// Minimum x-y separator size by subset sweep; test-side oracle.
inline std::size_t brute_min_separator(const Graph& g, Vertex x, Vertex y) {
    std::vector<Vertex> pool;
    for (Vertex v : g.vertices())
        if (v != x && v != y) pool.push_back(v);
    for (std::size_t k = 0; k <= pool.size(); ++k) {
        std::vector<std::size_t> idx(k);
        auto rec = [&](auto&& self, std::size_t at, std::size_t from) -> bool {
            if (at == k) {
                VertexSet s;
                for (std::size_t i : idx) s.insert(pool[i]);
                Graph h = g.minus(s);
                for (const VertexSet& c : brute_components(h))
                    if (c.count(x) && c.count(y)) return false;
                return true;
            }
            for (std::size_t i = from; i < pool.size(); ++i) {
                idx[at] = i;
                if (self(self, at + 1, i + 1)) return true;
            }
            return false;
        };
        if (rec(rec, 0, 0)) return k;
    }
    return pool.size();
}

inline Graph random_graph(Rng& rng, std::size_t n, std::uint32_t permille) {
    return gen_erdos_renyi(rng, n, permille);
}

// Apex flower: one hub vertex adjacent to `petals` disjoint triangles, so
// each petal plus the hub is a K4.
inline Graph apex_flower(std::size_t petals, Vertex& hub_out) {
    Graph g;
    Vertex hub = g.add_vertex();
    hub_out = hub;
    for (std::size_t i = 0; i < petals; ++i) {
        Vertex a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex();
        g.add_edge(a, b);
        g.add_edge(b, c);
        g.add_edge(a, c);
        g.add_edge(hub, a);
        g.add_edge(hub, b);
        g.add_edge(hub, c);
    }
    return g;
}

}  // namespace testutil
