#pragma once

#include <optional>
#include <vector>

#include "tw2k/instance.hpp"
#include "tw2k/recognize.hpp"

namespace tw2k {

// Certificate that X is a limit-m subset for (G, t): every budget-t solution
// leaves at most m = |X|-1 vertices of X. Backed by t+1 vertex-disjoint
// witness sets D_i, each with tw(G[D_i + X]) > 2 (certified by a K4 model).
struct LimitCertificate {
    VertexSet subject;
    std::size_t m = 0;
    std::vector<VertexSet> witnesses;
    std::vector<K4Witness> models;  // parallel to witnesses, found in G[D_i + X]
};

// Accepts candidates until t+1 of them certify; returns nullopt on a count
// shortfall. Candidates must be pairwise disjoint and avoid X.
inline std::optional<LimitCertificate> certify_limit(const Graph& g, int t, const VertexSet& x,
                                                     const std::vector<VertexSet>& candidates) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        require(disjoint(candidates[i], x), "certify_limit: candidate meets X");
        for (std::size_t j = i + 1; j < candidates.size(); ++j)
            require(disjoint(candidates[i], candidates[j]), "certify_limit: candidates overlap");
    }
    LimitCertificate cert;
    cert.subject = x;
    cert.m = x.empty() ? 0 : x.size() - 1;
    for (const VertexSet& d : candidates) {
        auto r = try_width2(g.induced(set_union(d, x)));
        if (std::holds_alternative<K4Witness>(r)) {
            cert.witnesses.push_back(d);
            cert.models.push_back(std::get<K4Witness>(r));
            if (cert.witnesses.size() == static_cast<std::size_t>(t) + 1) return cert;
        }
    }
    return std::nullopt;
}

enum class ModulatorOutcome {
    disjoint,             // tw(G - Y) <= 2
    limit_per_component,  // X is limit-(|X|-1) for (G - C, t) for every component C
};

struct DisjointModulatorResult {
    VertexSet y;
    ModulatorOutcome outcome;
    // For limit_per_component: t+2 disjoint vertex sets, each inducing (with
    // X) a graph of treewidth > 2; dropping the one containing a component C
    // leaves the t+1 witnesses for (G - C, t).
    std::vector<VertexSet> partition;
};

// Find-Disjoint-Modulator: peel treewidth-violating subtrees off a width-2
// decomposition of G - X, at most t+1 times, collecting the peeled root bags
// into Y. Root is the smallest node id; the peeled node is the deepest
// qualifying one, ties to the smaller id.
inline DisjointModulatorResult find_disjoint_modulator(const Graph& g, int t, const VertexSet& x) {
    require(!x.empty() && x.size() <= 3, "find_disjoint_modulator: |X| must be 1..3");
    for (Vertex a : x)
        for (Vertex b : x)
            if (a < b && !g.has_edge(a, b))
                throw precondition_error("find_disjoint_modulator: X is not a clique");
    Graph rest = g.minus(x);
    auto rec = try_width2(rest);
    require(std::holds_alternative<TreeDecomposition>(rec),
            "find_disjoint_modulator: X is not a modulator");
    TreeDecomposition td = std::get<TreeDecomposition>(std::move(rec));

    auto adj = td.adjacency();
    std::size_t n_nodes = td.node_count();
    std::vector<int> depth(n_nodes, -1);
    std::vector<NodeId> order;  // BFS order from the root
    depth[0] = 0;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (NodeId b : adj[order[i]])
            if (depth[b] < 0) {
                depth[b] = depth[order[i]] + 1;
                order.push_back(b);
            }

    // Subtree bag unions under the current overlay, recomputed per iteration
    // bottom-up over the reversed BFS order.
    VertexSet removed;
    auto subtree_unions = [&]() {
        std::vector<VertexSet> un(n_nodes);
        for (std::size_t i = order.size(); i-- > 0;) {
            NodeId v = order[i];
            un[v] = set_minus(td.bags[v], removed);
            for (NodeId c : adj[v])
                if (depth[c] == depth[v] + 1) un[v] = set_union(un[v], un[c]);
        }
        return un;
    };

    DisjointModulatorResult res;
    res.outcome = ModulatorOutcome::disjoint;
    int iterations = 0;
    while (true) {
        std::vector<VertexSet> un = subtree_unions();
        if (tw_le2(g.induced(set_union(un[0], x)))) {
            res.outcome = ModulatorOutcome::disjoint;
            break;
        }
        if (iterations == t + 1) {
            res.outcome = ModulatorOutcome::limit_per_component;
            res.partition.push_back(un[0]);  // the surviving remainder
            break;
        }
        // Deepest node whose subtree still violates width 2 together with X.
        NodeId pick = 0;
        bool found = false;
        for (std::size_t i = order.size(); i-- > 0;) {
            NodeId v = order[i];
            if (found && depth[v] < depth[pick]) break;
            if (!tw_le2(g.induced(set_union(un[v], x)))) {
                if (!found || depth[v] > depth[pick] ||
                    (depth[v] == depth[pick] && v < pick))
                    pick = v;
                found = true;
            }
        }
        check(found, "find_disjoint_modulator: loop condition vs node scan");
        VertexSet bag = set_minus(td.bags[pick], removed);
        check(!bag.empty(), "find_disjoint_modulator: peel adds nothing");
        res.y = set_union(res.y, bag);
        res.partition.push_back(un[pick]);
        removed = set_union(removed, un[pick]);
        ++iterations;
        check(iterations <= std::min<int>(t + 1, static_cast<int>(g.vertex_count())),
              "find_disjoint_modulator: loop count");

        // Loop invariants, kept on: the overlay stays a decomposition of
        // the remaining vertices, X + Y separates them from the peeled
        // part, and the peeled part together with Y keeps width 2.
        VertexSet remaining = subtree_unions()[0];
        TreeDecomposition overlay;
        overlay.tree_edges = td.tree_edges;
        for (const VertexSet& b : td.bags) overlay.bags.push_back(set_minus(b, removed));
        check(!validate(rest.induced(remaining), overlay).has_value(),
              "find_disjoint_modulator: overlay decomposition");
        VertexSet xy = set_union(x, res.y);
        for (Vertex u : remaining)
            for (Vertex w : g.neighbors(u))
                check(remaining.count(w) || xy.count(w),
                      "find_disjoint_modulator: X+Y separation");
        check(tw_le2(g.minus(set_union(remaining, res.y))),
              "find_disjoint_modulator: processed side keeps width 2");
    }

    if (res.outcome == ModulatorOutcome::disjoint) {
        res.partition.clear();
        check(tw_le2(g.minus(res.y)), "find_disjoint_modulator: disjoint outcome");
    } else {
        check(res.partition.size() == static_cast<std::size_t>(t) + 2,
              "find_disjoint_modulator: partition size");
        for (std::size_t i = 0; i < res.partition.size(); ++i) {
            check(!tw_le2(g.induced(set_union(res.partition[i], x))),
                  "partition member violates width");
            for (std::size_t j = i + 1; j < res.partition.size(); ++j)
                check(disjoint(res.partition[i], res.partition[j]),
                      "partition members overlap");
        }
    }
    check(res.y.size() <= 3 * static_cast<std::size_t>(t) + 3, "find_disjoint_modulator: |Y|");
    check(disjoint(res.y, x), "find_disjoint_modulator: Y meets X");
    return res;
}

}  // namespace tw2k
