#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tw2k/graph.hpp"

namespace tw2k {

using NodeId = std::uint32_t;

// Tree of bags. Nodes are dense indices into `bags`; empty bags are legal
// and kept (some callers blank out bags in place).
struct TreeDecomposition {
    std::vector<VertexSet> bags;
    std::vector<std::pair<NodeId, NodeId>> tree_edges;

    std::size_t node_count() const { return bags.size(); }

    int width() const {
        int w = -1;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }

    std::vector<std::vector<NodeId>> adjacency() const {
        std::vector<std::vector<NodeId>> adj(bags.size());
        for (auto [a, b] : tree_edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }

    VertexSet bag_union(const std::vector<NodeId>& nodes) const {
        VertexSet out;
        for (NodeId t : nodes) out.insert(bags[t].begin(), bags[t].end());
        return out;
    }
};

// First violated decomposition property, or nullopt when valid. Checks the
// tree shape, the three decomposition properties and the width-2 cap, and
// names the offending vertex/edge/node.
struct TdViolation {
    std::string property;  // "tree", "T1", "T2", "T3", "width"
    std::string detail;
};

inline std::optional<TdViolation> validate(const Graph& g, const TreeDecomposition& td) {
    std::size_t n = td.node_count();
    if (n == 0) return TdViolation{"tree", "no nodes"};
    auto adj = td.adjacency();
    for (auto [a, b] : td.tree_edges)
        if (a >= n || b >= n || a == b) return TdViolation{"tree", "bad tree edge"};
    if (td.tree_edges.size() != n - 1) return TdViolation{"tree", "edge count"};
    {
        std::vector<char> seen(n, 0);
        std::vector<NodeId> queue{0};
        seen[0] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (NodeId b : adj[queue[i]])
                if (!seen[b]) {
                    seen[b] = 1;
                    queue.push_back(b);
                }
        for (std::size_t i = 0; i < n; ++i)
            if (!seen[i]) return TdViolation{"tree", "disconnected"};
    }

    VertexSet covered;
    for (const auto& b : td.bags) covered.insert(b.begin(), b.end());
    for (Vertex v : covered)
        if (!g.has_vertex(v))
            return TdViolation{"T1", "bag vertex " + std::to_string(v) + " not in graph"};
    for (Vertex v : g.vertices())
        if (!covered.count(v))
            return TdViolation{"T1", "vertex " + std::to_string(v) + " uncovered"};

    {
        std::map<Vertex, std::vector<NodeId>> occ;
        for (NodeId t = 0; t < n; ++t)
            for (Vertex v : td.bags[t]) occ[v].push_back(t);

        for (const Edge& e : g.edges()) {
            bool found = false;
            for (NodeId t : occ[e.first])
                if (td.bags[t].count(e.second)) {
                    found = true;
                    break;
                }
            if (!found)
                return TdViolation{"T2", "edge " + std::to_string(e.first) + "-" +
                                              std::to_string(e.second) + " in no bag"};
        }
        std::vector<char> mark(n, 0);
        for (const auto& [v, nodes] : occ) {
            for (NodeId t : nodes) mark[t] = 1;
            std::vector<NodeId> queue{nodes.front()};
            mark[nodes.front()] = 2;
            std::size_t seen = 1;
            for (std::size_t i = 0; i < queue.size(); ++i)
                for (NodeId b : adj[queue[i]])
                    if (mark[b] == 1) {
                        mark[b] = 2;
                        ++seen;
                        queue.push_back(b);
                    }
            for (NodeId t : nodes) mark[t] = 0;
            if (seen != nodes.size())
                return TdViolation{"T3",
                                   "vertex " + std::to_string(v) + " occurrences disconnected"};
        }
    }

    if (td.width() > 2) return TdViolation{"width", "width " + std::to_string(td.width())};
    return std::nullopt;
}

inline bool is_smooth(const TreeDecomposition& td) {
    for (const auto& b : td.bags)
        if (b.size() != 3) return false;
    for (auto [a, b] : td.tree_edges)
        if (set_intersect(td.bags[a], td.bags[b]).size() != 2) return false;
    return true;
}

// Normalizes a valid width-2 decomposition into a smooth one: merge
// subset-adjacent bags, pad undersized bags from a neighbour, then split
// edges whose adhesion is below 2. Requires |V| >= 3.
inline TreeDecomposition smooth(const Graph& g, const TreeDecomposition& td_in) {
    require(g.vertex_count() >= 3, "smooth: needs at least 3 vertices");
    require(!validate(g, td_in), "smooth: input decomposition invalid");

    // Work on an adjacency-list copy that tolerates node deletion.
    std::vector<VertexSet> bags = td_in.bags;
    std::vector<VertexSet> nbs(bags.size());
    std::vector<char> alive(bags.size(), 1);
    for (auto [a, b] : td_in.tree_edges) {
        nbs[a].insert(b);
        nbs[b].insert(a);
    }

    auto merge_pass = [&]() -> bool {
        bool changed = false;
        bool again = true;
        while (again) {
            again = false;
            for (NodeId a = 0; a < bags.size() && !again; ++a) {
                if (!alive[a]) continue;
                for (NodeId b : nbs[a]) {
                    if (is_subset(bags[a], bags[b])) {
                        // contract a into b
                        for (NodeId c : nbs[a])
                            if (c != b) {
                                nbs[c].erase(a);
                                nbs[c].insert(b);
                                nbs[b].insert(c);
                            }
                        nbs[b].erase(a);
                        alive[a] = 0;
                        nbs[a].clear();
                        bags[a].clear();
                        again = true;
                        changed = true;
                        break;
                    }
                }
            }
        }
        return changed;
    };

    auto pad_one = [&]() -> bool {
        for (NodeId a = 0; a < bags.size(); ++a) {
            if (!alive[a] || bags[a].size() >= 3) continue;
            check(!nbs[a].empty(), "undersized bag with no neighbour");
            NodeId b = *nbs[a].begin();
            VertexSet fresh = set_minus(bags[b], bags[a]);
            check(!fresh.empty(), "neighbour bag adds nothing");
            bags[a].insert(*fresh.begin());
            return true;
        }
        return false;
    };

    merge_pass();
    while (pad_one()) merge_pass();

    // Compact to dense ids.
    TreeDecomposition out;
    std::map<NodeId, NodeId> remap;
    for (NodeId a = 0; a < bags.size(); ++a)
        if (alive[a]) {
            remap[a] = static_cast<NodeId>(out.bags.size());
            out.bags.push_back(bags[a]);
        }
    for (NodeId a = 0; a < bags.size(); ++a)
        if (alive[a])
            for (NodeId b : nbs[a])
                if (a < b) out.tree_edges.push_back({remap[a], remap[b]});

    // Split low-adhesion edges with interpolating bags.
    std::vector<std::pair<NodeId, NodeId>> edges = std::move(out.tree_edges);
    out.tree_edges.clear();
    for (auto [a, b] : edges) {
        VertexSet shared = set_intersect(out.bags[a], out.bags[b]);
        if (shared.size() >= 2) {
            out.tree_edges.push_back({a, b});
            continue;
        }
        VertexSet only_a = set_minus(out.bags[a], out.bags[b]);
        VertexSet only_b = set_minus(out.bags[b], out.bags[a]);
        std::vector<Vertex> drop(only_a.begin(), only_a.end());
        std::vector<Vertex> gain(only_b.begin(), only_b.end());
        NodeId prev = a;
        VertexSet cur = out.bags[a];
        for (std::size_t i = 0; i + 1 < gain.size(); ++i) {
            cur.erase(drop[i]);
            cur.insert(gain[i]);
            NodeId mid = static_cast<NodeId>(out.bags.size());
            out.bags.push_back(cur);
            out.tree_edges.push_back({prev, mid});
            prev = mid;
        }
        out.tree_edges.push_back({prev, b});
    }

    check(!validate(g, out).has_value(), "smooth: output invalid");
    check(is_smooth(out), "smooth: output not smooth");
    check(out.node_count() == g.vertex_count() - 2, "smooth: node count");
    return out;
}

// Builds a decomposition of g from a decomposition of g[u] plus, for every
// component C of g - u, a decomposition of g[N[C]]; each g[N(C)] must be a
// clique. Each part is linked to a bag containing its clique interface.
inline TreeDecomposition combine_around_clique(const Graph& g, const VertexSet& u,
                                               const std::vector<TreeDecomposition>& parts) {
    std::vector<VertexSet> comps = components(g.minus(u));
    require(parts.size() == comps.size() + 1, "combine: part count mismatch");
    Graph gu = g.induced(u);
    require(!validate(gu, parts[0]).has_value() && parts[0].width() <= 2,
            "combine: base part invalid");

    auto find_bag_with = [](const TreeDecomposition& td, const VertexSet& want) -> NodeId {
        for (NodeId t = 0; t < td.node_count(); ++t)
            if (is_subset(want, td.bags[t])) return t;
        throw precondition_error("combine: no bag contains the clique interface");
    };

    TreeDecomposition out = parts[0];
    for (std::size_t i = 0; i < comps.size(); ++i) {
        VertexSet nb = g.neighborhood(comps[i]);
        for (Vertex a : nb)
            for (Vertex b : nb)
                if (a < b && !g.has_edge(a, b))
                    throw precondition_error("combine: component interface not a clique");
        const TreeDecomposition& part = parts[i + 1];
        Graph closed = g.induced(set_union(comps[i], nb));
        require(!validate(closed, part).has_value() && part.width() <= 2,
                "combine: component part invalid");
        NodeId hook_out = find_bag_with(out, nb);
        NodeId hook_in = find_bag_with(part, nb);
        NodeId base = static_cast<NodeId>(out.bags.size());
        out.bags.insert(out.bags.end(), part.bags.begin(), part.bags.end());
        for (auto [a, b] : part.tree_edges) out.tree_edges.push_back({base + a, base + b});
        out.tree_edges.push_back({hook_out, base + hook_in});
    }
    check(!validate(g, out).has_value(), "combine: result invalid");
    return out;
}

}  // namespace tw2k
