#pragma once

#include "tw2k/instance.hpp"

namespace tw2k {

// splitmix64: tiny, stable across platforms, good enough for test instances.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(next() % n); }

    bool chance_permille(std::uint32_t permille) { return next() % 1000 < permille; }
};

inline Graph gen_erdos_renyi(Rng& rng, std::size_t n, std::uint32_t density_permille) {
    Graph g;
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(g.add_vertex());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.chance_permille(density_permille)) g.add_edge(vs[i], vs[j]);
    return g;
}

// Random partial 2-tree: grow a 2-tree by attaching each new vertex to both
// ends of a random existing edge, then keep each edge with the given rate.
// Always has treewidth <= 2.
inline Graph gen_partial_two_tree(Rng& rng, std::size_t n, std::uint32_t keep_permille = 1000) {
    Graph g;
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = g.add_vertex();
        if (i == 1) {
            g.add_edge(vs[0], v);
            es.push_back(make_edge(vs[0], v));
        } else if (i >= 2) {
            Edge e = es[rng.below(static_cast<std::uint32_t>(es.size()))];
            g.add_edge(e.first, v);
            g.add_edge(e.second, v);
            es.push_back(make_edge(e.first, v));
            es.push_back(make_edge(e.second, v));
        }
        vs.push_back(v);
    }
    if (keep_permille < 1000)
        for (const Edge& e : g.edges())
            if (!rng.chance_permille(keep_permille)) g.remove_edge(e.first, e.second);
    return g;
}

// Seeded instance: either plain Erdos-Renyi, or a planted width-2 core with
// extra noise vertices wired in at the same density.
inline ProblemInstance gen_instance(std::uint64_t seed, std::size_t n,
                                    std::uint32_t density_permille, int t,
                                    std::size_t planted_core = 0) {
    Rng rng(seed);
    ProblemInstance pi;
    pi.t = t;
    if (planted_core == 0 || planted_core > n) {
        pi.graph = gen_erdos_renyi(rng, n, density_permille);
        return pi;
    }
    pi.graph = gen_partial_two_tree(rng, planted_core);
    VertexSet core_vs = pi.graph.vertices();
    std::vector<Vertex> all(core_vs.begin(), core_vs.end());
    for (std::size_t i = planted_core; i < n; ++i) {
        Vertex v = pi.graph.add_vertex();
        for (Vertex u : all)
            if (rng.chance_permille(density_permille)) pi.graph.add_edge(v, u);
        all.push_back(v);
    }
    return pi;
}

}  // namespace tw2k
