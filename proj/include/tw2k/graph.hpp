#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "tw2k/check.hpp"

namespace tw2k {

using Vertex = std::uint32_t;
using VertexSet = std::set<Vertex>;
using Edge = std::pair<Vertex, Vertex>;  // normalized u < v
using EdgeSet = std::set<Edge>;

inline Edge make_edge(Vertex u, Vertex v) {
    return u < v ? Edge{u, v} : Edge{v, u};
}

// Simple undirected graph. Vertex ids are handed out by a monotone per-graph
// allocator and never reused, so ids stay meaningful across deletions and
// contractions.
class Graph {
  public:
    Graph() = default;

    Vertex add_vertex() {
        Vertex v = next_++;
        adj_[v];
        return v;
    }

    // Inserts a specific id (used by parsers and tests). Keeps the allocator
    // ahead of every id ever seen.
    void add_vertex(Vertex v) {
        require(!has_vertex(v), "add_vertex: id already present");
        adj_[v];
        if (v >= next_) next_ = v + 1;
    }

    bool has_vertex(Vertex v) const { return adj_.count(v) > 0; }

    bool has_edge(Vertex u, Vertex v) const {
        auto it = adj_.find(u);
        return it != adj_.end() && it->second.count(v) > 0;
    }

    void add_edge(Vertex u, Vertex v) {
        require(u != v, "add_edge: self-loop");
        require(has_vertex(u) && has_vertex(v), "add_edge: endpoint not present");
        adj_[u].insert(v);
        adj_[v].insert(u);
    }

    void remove_edge(Vertex u, Vertex v) {
        require(has_edge(u, v), "remove_edge: edge not present");
        adj_[u].erase(v);
        adj_[v].erase(u);
    }

    void remove_vertex(Vertex v) {
        require(has_vertex(v), "remove_vertex: not present");
        for (Vertex u : adj_[v]) adj_[u].erase(v);
        adj_.erase(v);
    }

    std::size_t vertex_count() const { return adj_.size(); }

    std::size_t edge_count() const {
        std::size_t d = 0;
        for (const auto& [v, nb] : adj_) d += nb.size();
        return d / 2;
    }

    VertexSet vertices() const {
        VertexSet out;
        for (const auto& [v, nb] : adj_) out.insert(v);
        return out;
    }

    EdgeSet edges() const {
        EdgeSet out;
        for (const auto& [v, nb] : adj_)
            for (Vertex u : nb)
                if (v < u) out.insert({v, u});
        return out;
    }

    const VertexSet& neighbors(Vertex v) const {
        auto it = adj_.find(v);
        require(it != adj_.end(), "neighbors: vertex not present");
        return it->second;
    }

    std::size_t degree(Vertex v) const { return neighbors(v).size(); }

    std::size_t min_degree() const {
        std::size_t d = adj_.empty() ? 0 : SIZE_MAX;
        for (const auto& [v, nb] : adj_) d = std::min(d, nb.size());
        return d;
    }

    // Open neighbourhood of a set.
    VertexSet neighborhood(const VertexSet& s) const {
        VertexSet out;
        for (Vertex v : s)
            for (Vertex u : neighbors(v))
                if (!s.count(u)) out.insert(u);
        return out;
    }

    // Subgraph induced by `keep`; ids and the allocator state are preserved.
    Graph induced(const VertexSet& keep) const {
        Graph g;
        g.next_ = next_;
        for (Vertex v : keep) {
            require(has_vertex(v), "induced: vertex not present");
            g.adj_[v];
        }
        for (Vertex v : keep)
            for (Vertex u : neighbors(v))
                if (u > v && keep.count(u)) {
                    g.adj_[v].insert(u);
                    g.adj_[u].insert(v);
                }
        return g;
    }

    Graph minus(const VertexSet& drop) const {
        VertexSet keep;
        for (const auto& [v, nb] : adj_)
            if (!drop.count(v)) keep.insert(v);
        return induced(keep);
    }

    Graph minus(Vertex v) const { return minus(VertexSet{v}); }

    bool operator==(const Graph& o) const { return adj_ == o.adj_; }

  private:
    std::map<Vertex, VertexSet> adj_;
    Vertex next_ = 1;
};

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    for (Vertex v : a)
        if (!b.count(v)) out.insert(v);
    return out;
}

inline VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    for (Vertex v : a)
        if (b.count(v)) out.insert(v);
    return out;
}

inline bool disjoint(const VertexSet& a, const VertexSet& b) {
    for (Vertex v : a)
        if (b.count(v)) return false;
    return true;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    for (Vertex v : a)
        if (!b.count(v)) return false;
    return true;
}

// Components as vertex sets, ordered by smallest contained vertex.
inline std::vector<VertexSet> components(const Graph& g) {
    std::vector<VertexSet> out;
    VertexSet seen;
    for (Vertex start : g.vertices()) {
        if (seen.count(start)) continue;
        VertexSet comp;
        std::vector<Vertex> stack{start};
        seen.insert(start);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.insert(v);
            for (Vertex u : g.neighbors(v))
                if (seen.insert(u).second) stack.push_back(u);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const Graph& g) { return components(g).size() <= 1; }

inline bool is_connected_subset(const Graph& g, const VertexSet& s) {
    if (s.empty()) return false;
    return components(g.induced(s)).size() == 1;
}

// Collapses `part` (which must induce a connected subgraph) onto `keep`.
inline Graph contract_into(const Graph& g, const VertexSet& part, Vertex keep) {
    require(part.count(keep) > 0, "contract_into: keep outside part");
    require(is_connected_subset(g, part), "contract_into: part not connected");
    VertexSet outside = g.neighborhood(part);
    Graph out = g.minus(set_minus(part, VertexSet{keep}));
    for (Vertex u : outside)
        if (!out.has_edge(keep, u)) out.add_edge(keep, u);
    return out;
}

// BFS tree edges from the smallest vertex; requires a connected graph.
inline EdgeSet spanning_tree(const Graph& g) {
    require(is_connected(g), "spanning_tree: disconnected input");
    EdgeSet tree;
    if (g.vertex_count() == 0) return tree;
    Vertex root = *g.vertices().begin();
    VertexSet seen{root};
    std::vector<Vertex> queue{root};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Vertex v = queue[i];
        for (Vertex u : g.neighbors(v))
            if (seen.insert(u).second) {
                tree.insert(make_edge(v, u));
                queue.push_back(u);
            }
    }
    check(tree.size() + 1 == g.vertex_count() || g.vertex_count() == 0,
          "spanning tree edge count");
    return tree;
}

// Greedy maximal matching over edges in lexicographic order.
inline EdgeSet maximal_matching(const Graph& g) {
    EdgeSet matching;
    VertexSet used;
    for (const Edge& e : g.edges()) {
        if (used.count(e.first) || used.count(e.second)) continue;
        matching.insert(e);
        used.insert(e.first);
        used.insert(e.second);
    }
    return matching;
}

// Simple path utilities (paths as vertex sequences).
using Path = std::vector<Vertex>;

inline bool is_simple_path(const Graph& g, const Path& p) {
    if (p.empty()) return false;
    VertexSet seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!g.has_vertex(p[i])) return false;
        if (!seen.insert(p[i]).second) return false;
        if (i > 0 && !g.has_edge(p[i - 1], p[i])) return false;
    }
    return true;
}

inline bool is_induced_path(const Graph& g, const Path& p) {
    if (!is_simple_path(g, p)) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 2; j < p.size(); ++j)
            if (g.has_edge(p[i], p[j])) return false;
    return true;
}

// Shortest path between endpoints, BFS with neighbor order by id.
inline Path shortest_path(const Graph& g, Vertex s, Vertex t) {
    std::map<Vertex, Vertex> parent;
    parent[s] = s;
    std::vector<Vertex> queue{s};
    for (std::size_t i = 0; i < queue.size() && !parent.count(t); ++i)
        for (Vertex u : g.neighbors(queue[i]))
            if (!parent.count(u)) {
                parent[u] = queue[i];
                queue.push_back(u);
            }
    require(parent.count(t), "shortest_path: endpoints not connected");
    Path rev{t};
    while (rev.back() != s) rev.push_back(parent[rev.back()]);
    return Path(rev.rbegin(), rev.rend());
}

}  // namespace tw2k
