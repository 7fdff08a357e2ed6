#pragma once

#include <array>
#include <map>
#include <variant>
#include <vector>

#include "tw2k/decomposition.hpp"
#include "tw2k/graph.hpp"

namespace tw2k {

// Four disjoint connected branch sets, pairwise joined by an edge: a
// certificate that the graph has treewidth above 2.
struct K4Witness {
    std::array<VertexSet, 4> parts;
};

inline bool verify_k4_model(const Graph& g, const K4Witness& w) {
    for (int i = 0; i < 4; ++i) {
        if (w.parts[i].empty()) return false;
        for (Vertex v : w.parts[i])
            if (!g.has_vertex(v)) return false;
        if (!is_connected_subset(g, w.parts[i])) return false;
        for (int j = i + 1; j < 4; ++j)
            if (!disjoint(w.parts[i], w.parts[j])) return false;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            bool touch = false;
            for (Vertex v : w.parts[i]) {
                for (Vertex u : g.neighbors(v))
                    if (w.parts[j].count(u)) {
                        touch = true;
                        break;
                    }
                if (touch) break;
            }
            if (!touch) return false;
        }
    return true;
}

namespace detail {

// One low-degree elimination run. Treewidth <= 2 iff the graph empties under
// "delete degree <= 1; bypass degree 2 (adding the neighbour edge)". Records
// the order and the bag {v} + N(v) at elimination time when asked.
struct Elimination {
    bool emptied = false;
    std::vector<Vertex> order;
    std::vector<VertexSet> bags;  // parallel to order
};

inline Elimination eliminate(const Graph& g, bool record) {
    std::map<Vertex, VertexSet> adj;
    for (Vertex v : g.vertices()) adj[v] = g.neighbors(v);
    // Degree <= 1 removals run before degree-2 bypasses (smallest id each),
    // so trees come out at width 1. Degrees never grow during elimination,
    // so stale worklist entries only ever shrink and are re-checked on pop.
    VertexSet low1, low2;
    auto classify = [&](Vertex v) {
        auto it = adj.find(v);
        if (it == adj.end()) return;
        if (it->second.size() <= 1)
            low1.insert(v);
        else if (it->second.size() == 2)
            low2.insert(v);
    };
    for (const auto& [v, nb] : adj) classify(v);

    Elimination res;
    while (!low1.empty() || !low2.empty()) {
        Vertex v;
        if (!low1.empty()) {
            v = *low1.begin();
            low1.erase(low1.begin());
            auto it = adj.find(v);
            if (it == adj.end() || it->second.size() > 1) continue;
        } else {
            v = *low2.begin();
            low2.erase(low2.begin());
            auto it = adj.find(v);
            if (it == adj.end() || it->second.size() != 2) continue;
        }
        VertexSet nb = adj[v];
        if (record) {
            res.order.push_back(v);
            res.bags.push_back(set_union(nb, VertexSet{v}));
        }
        for (Vertex u : nb) adj[u].erase(v);
        adj.erase(v);
        if (nb.size() == 2) {
            Vertex a = *nb.begin(), b = *nb.rbegin();
            adj[a].insert(b);
            adj[b].insert(a);
        }
        for (Vertex u : nb) classify(u);
    }
    res.emptied = adj.empty();
    return res;
}

}  // namespace detail

inline bool tw_le2(const Graph& g) { return detail::eliminate(g, false).emptied; }

namespace detail {

// Clique-tree construction from the elimination order: bag i is the
// elimination bag of the i-th vertex; its parent is the bag of the earliest
// subsequently eliminated member. Per-component roots are chained so the
// result is one tree.
inline TreeDecomposition decomposition_from_elimination(const Graph& g, const Elimination& el) {
    TreeDecomposition td;
    if (el.order.empty()) {
        td.bags.push_back({});
        return td;
    }
    std::map<Vertex, NodeId> pos;
    for (NodeId i = 0; i < el.order.size(); ++i) pos[el.order[i]] = i;
    td.bags = el.bags;
    std::vector<NodeId> roots;
    for (NodeId i = 0; i < el.order.size(); ++i) {
        NodeId parent = static_cast<NodeId>(el.order.size());
        for (Vertex u : el.bags[i])
            if (u != el.order[i]) parent = std::min(parent, pos[u]);
        if (parent == el.order.size())
            roots.push_back(i);
        else
            td.tree_edges.push_back({i, parent});
    }
    for (std::size_t i = 1; i < roots.size(); ++i)
        td.tree_edges.push_back({roots[i - 1], roots[i]});
    check(!validate(g, td).has_value(), "elimination decomposition invalid");
    return td;
}

// Shrinks a graph of treewidth > 2 to an exact K4 subdivision by greedily
// deleting vertices, then edges, as long as the treewidth stays above 2.
// The survivor has four degree-3 branch vertices joined by six internally
// disjoint paths of degree-2 vertices.
inline K4Witness extract_witness(const Graph& g) {
    Graph h = g;
    for (Vertex v : g.vertices()) {
        Graph cand = h.minus(v);
        if (!tw_le2(cand)) h = std::move(cand);
    }
    for (const Edge& e : h.edges()) {
        Graph cand = h;
        cand.remove_edge(e.first, e.second);
        if (!tw_le2(cand)) h = std::move(cand);
    }
    for (Vertex v : h.vertices())
        if (h.degree(v) == 0) h.remove_vertex(v);

    std::vector<Vertex> branch;
    for (Vertex v : h.vertices()) {
        check(h.degree(v) == 2 || h.degree(v) == 3, "witness core degrees");
        if (h.degree(v) == 3) branch.push_back(v);
    }
    check(branch.size() == 4, "witness core has 4 branch vertices");

    // Walk the six subdivision paths; interiors of paths out of branch i go
    // to part i when i < j, keeping every part connected.
    std::map<Vertex, int> branch_index;
    for (int i = 0; i < 4; ++i) branch_index[branch[i]] = i;
    K4Witness w;
    for (int i = 0; i < 4; ++i) w.parts[i].insert(branch[i]);
    EdgeSet walked;
    int paths = 0;
    for (int i = 0; i < 4; ++i) {
        for (Vertex first : h.neighbors(branch[i])) {
            if (walked.count(make_edge(branch[i], first))) continue;
            Path p{branch[i], first};
            walked.insert(make_edge(branch[i], first));
            while (!branch_index.count(p.back())) {
                Vertex cur = p.back();
                bool advanced = false;
                for (Vertex nx : h.neighbors(cur))
                    if (!walked.count(make_edge(cur, nx))) {
                        walked.insert(make_edge(cur, nx));
                        p.push_back(nx);
                        advanced = true;
                        break;
                    }
                check(advanced, "witness path walk stuck");
            }
            int j = branch_index[p.back()];
            check(j != i, "witness path loops back");
            if (j < i) continue;  // already collected from the other side
            ++paths;
            for (std::size_t k = 1; k + 1 < p.size(); ++k) w.parts[i].insert(p[k]);
        }
    }
    check(paths == 6, "witness core has 6 paths");
    check(verify_k4_model(g, w), "extracted witness fails verification");
    return w;
}

}  // namespace detail

// Width-2 recognition with certificate: a valid width-<=2 decomposition of g
// or a verified K4 minor model, never both.
inline std::variant<TreeDecomposition, K4Witness> try_width2(const Graph& g) {
    detail::Elimination el = detail::eliminate(g, true);
    if (el.emptied) return detail::decomposition_from_elimination(g, el);
    return detail::extract_witness(g);
}

inline TreeDecomposition decompose_width2(const Graph& g) {
    auto r = try_width2(g);
    require(std::holds_alternative<TreeDecomposition>(r), "decompose_width2: treewidth > 2");
    return std::get<TreeDecomposition>(std::move(r));
}

}  // namespace tw2k
