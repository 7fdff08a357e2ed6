#pragma once

#include <map>
#include <vector>

#include "tw2k/graph.hpp"

namespace tw2k {

// Maximum internally vertex-disjoint x-y paths and a matching minimum
// separator, via unit-capacity flow on the vertex-split network. The two
// results are computed together so Menger's equality can be checked on
// every call.
struct MengerResult {
    std::vector<Path> paths;  // each from x to y, pairwise internally disjoint
    VertexSet separator;      // subset of V minus {x,y}; empty iff disconnected pair
};

namespace detail {

// Split network: node 2*i is v_in, node 2*i+1 is v_out for compact index i.
struct SplitNetwork {
    std::vector<Vertex> label;            // index -> original vertex
    std::map<Vertex, int> index;          // original vertex -> index
    std::vector<std::vector<int>> adj;    // residual adjacency over node ids
    std::vector<std::map<int, int>> cap;  // residual capacities

    int in(int i) const { return 2 * i; }
    int out(int i) const { return 2 * i + 1; }

    void add_arc(int a, int b, int c) {
        if (!cap[a].count(b)) {
            cap[a][b] = 0;
            adj[a].push_back(b);
        }
        if (!cap[b].count(a)) {
            cap[b][a] = 0;
            adj[b].push_back(a);
        }
        cap[a][b] += c;
    }
};

}  // namespace detail

inline MengerResult max_paths_and_separator(const Graph& g, Vertex x, Vertex y) {
    require(g.has_vertex(x) && g.has_vertex(y), "menger: endpoint missing");
    require(x != y, "menger: endpoints equal");
    if (g.has_edge(x, y)) throw unsupported_input("menger: endpoints are adjacent");

    detail::SplitNetwork net;
    for (Vertex v : g.vertices()) {
        net.index[v] = static_cast<int>(net.label.size());
        net.label.push_back(v);
    }
    int n = static_cast<int>(net.label.size());
    net.adj.resize(2 * n);
    net.cap.resize(2 * n);
    int xi = net.index[x], yi = net.index[y];
    // No flow may pass through x or y as interior vertices: their splitting
    // arcs get capacity 0 (the source is x_out, the sink is y_in). Crossing
    // arcs are effectively uncapacitated so the min cut lands on splitting
    // arcs only.
    for (int i = 0; i < n; ++i) net.add_arc(net.in(i), net.out(i), i == xi || i == yi ? 0 : 1);
    for (const Edge& e : g.edges()) {
        int a = net.index[e.first], b = net.index[e.second];
        net.add_arc(net.out(a), net.in(b), n + 1);
        net.add_arc(net.out(b), net.in(a), n + 1);
    }
    int source = net.out(xi), sink = net.in(yi);

    int nodes = 2 * n;
    std::vector<int> parent(nodes);
    auto bfs = [&]() -> bool {
        std::fill(parent.begin(), parent.end(), -1);
        parent[source] = source;
        std::vector<int> queue{source};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int a = queue[i];
            for (int b : net.adj[a])
                if (parent[b] < 0 && net.cap[a][b] > 0) {
                    parent[b] = a;
                    if (b == sink) return true;
                    queue.push_back(b);
                }
        }
        return false;
    };
    while (bfs()) {
        for (int b = sink; b != source; b = parent[b]) {
            int a = parent[b];
            net.cap[a][b] -= 1;
            net.cap[b][a] += 1;
        }
    }

    // A forward arc carries flow iff its residual dropped to 0. Forward arcs
    // are the splitting arcs 2i -> 2i+1 and the crossing arcs u_out -> w_in
    // for real edges uw; reverse residual arcs are never confused with them.
    auto carries_flow = [&](int a, int b) -> bool {
        bool splitting = (a % 2 == 0 && b == a + 1 && a / 2 != xi && a / 2 != yi);
        if (splitting) return net.cap[a][b] == 0 && net.cap[b][a] > 0;
        bool crossing = a % 2 == 1 && b % 2 == 0 && a / 2 != b / 2 &&
                        g.has_edge(net.label[a / 2], net.label[b / 2]);
        // Crossing arcs carry at most one unit: the reverse residual equals
        // the net flow pushed across them.
        return crossing && net.cap[b][a] > 0;
    };
    std::map<int, std::vector<int>> flow_out;
    for (int a = 0; a < nodes; ++a)
        for (int b : net.adj[a])
            if (carries_flow(a, b)) flow_out[a].push_back(b);

    MengerResult res;
    while (!flow_out[source].empty()) {
        Path p{x};
        int at = source;
        while (at != sink) {
            std::vector<int>& nexts = flow_out[at];
            check(!nexts.empty(), "flow decomposition dead end");
            int nx = nexts.back();
            nexts.pop_back();
            // crossing arcs land on in-nodes (even); splitting arcs on odd
            if (nx % 2 == 0) p.push_back(net.label[nx / 2]);
            at = nx;
        }
        res.paths.push_back(std::move(p));
    }

    // Min separator: vertices whose splitting arc crosses the residual cut.
    std::vector<char> reach(nodes, 0);
    reach[source] = 1;
    std::vector<int> queue{source};
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (int b : net.adj[queue[i]])
            if (!reach[b] && net.cap[queue[i]][b] > 0) {
                reach[b] = 1;
                queue.push_back(b);
            }
    for (int i = 0; i < n; ++i) {
        if (i == xi || i == yi) continue;
        if (reach[net.in(i)] && !reach[net.out(i)]) res.separator.insert(net.label[i]);
    }

    check(res.separator.size() == res.paths.size(), "menger duality");
    for (const Path& p : res.paths) {
        check(p.front() == x && p.back() == y, "flow path endpoints");
        check(is_simple_path(g, p), "flow path not simple in g");
    }
    return res;
}

inline std::vector<Path> max_disjoint_paths(const Graph& g, Vertex x, Vertex y) {
    return max_paths_and_separator(g, x, y).paths;
}

inline VertexSet min_separator(const Graph& g, Vertex x, Vertex y) {
    return max_paths_and_separator(g, x, y).separator;
}

}  // namespace tw2k
