#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tw2k/graph.hpp"
#include "tw2k/oracle.hpp"
#include "tw2k/recognize.hpp"

namespace tw2k {

struct ProblemInstance {
    Graph graph;
    int t = 0;

    bool operator==(const ProblemInstance& o) const { return t == o.t && graph == o.graph; }
};

// One applied rule, with enough data to replay it: drop the listed vertices
// (with incident edges), drop the listed edges, add the listed edges, then
// shift the budget. Budgets never grow.
struct ReductionEvent {
    std::string rule;
    std::vector<Vertex> removed_vertices;
    std::vector<Edge> removed_edges;
    std::vector<Edge> added_edges;
    int t_delta = 0;
};

using Trace = std::vector<ReductionEvent>;

inline void replay(ProblemInstance& pi, const ReductionEvent& ev) {
    require(ev.t_delta <= 0, "replay: budget may not grow");
    for (Vertex v : ev.removed_vertices) pi.graph.remove_vertex(v);
    for (const Edge& e : ev.removed_edges) pi.graph.remove_edge(e.first, e.second);
    for (const Edge& e : ev.added_edges) pi.graph.add_edge(e.first, e.second);
    pi.t += ev.t_delta;
    require(pi.t >= 0, "replay: negative budget");
}

inline ProblemInstance replay_all(ProblemInstance pi, const Trace& trace) {
    for (const ReductionEvent& ev : trace) replay(pi, ev);
    return pi;
}

inline bool verify_solution(const ProblemInstance& pi, const VertexSet& s) {
    for (Vertex v : s)
        require(pi.graph.has_vertex(v), "verify_solution: vertex outside graph");
    if (s.size() > static_cast<std::size_t>(pi.t)) return false;
    return tw_le2(pi.graph.minus(s));
}

inline bool oracle_equivalent(const ProblemInstance& a, const ProblemInstance& b) {
    return oracle::yes_instance(a.graph, a.t) == oracle::yes_instance(b.graph, b.t);
}

// ---- trivial instances -----------------------------------------------------

enum class TrivialReason { none, few_vertices, width_le2, zero_budget, contract_component };

struct TrivialClass {
    TrivialReason reason = TrivialReason::none;
    VertexSet witness;  // the subgraph H for contract_component
};

// Candidate enumeration for the contract rule: separators X of size <= 2 in
// ascending order, components of G - X by smallest vertex.
inline std::optional<VertexSet> find_contractable(const Graph& g) {
    auto qualifies = [&](const VertexSet& h) -> bool {
        VertexSet nb = g.neighborhood(h);
        if (nb.size() > 2) return false;
        Graph probe = g.induced(set_union(h, nb));
        if (nb.size() == 2 && !probe.has_edge(*nb.begin(), *nb.rbegin()))
            probe.add_edge(*nb.begin(), *nb.rbegin());
        return tw_le2(probe);
    };
    std::vector<VertexSet> cuts{{}};
    VertexSet all_vs = g.vertices();
    std::vector<Vertex> vs(all_vs.begin(), all_vs.end());
    for (Vertex v : vs) cuts.push_back({v});
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) cuts.push_back({vs[i], vs[j]});
    for (const VertexSet& x : cuts)
        for (const VertexSet& h : components(g.minus(x)))
            if (qualifies(h)) return h;
    return std::nullopt;
}

inline TrivialClass classify_trivial(const ProblemInstance& pi) {
    if (pi.graph.vertex_count() <= 4) return {TrivialReason::few_vertices, {}};
    if (tw_le2(pi.graph)) return {TrivialReason::width_le2, {}};
    if (pi.t == 0) return {TrivialReason::zero_budget, {}};
    if (auto h = find_contractable(pi.graph))
        return {TrivialReason::contract_component, *h};
    return {TrivialReason::none, {}};
}

// Necessary conditions for non-triviality that stay cheap on large graphs;
// the exhaustive contract-component sweep is reserved for desk scale.
inline bool plausibly_nontrivial(const ProblemInstance& pi) {
    return pi.graph.vertex_count() > 4 && pi.t > 0 && pi.graph.min_degree() >= 3 &&
           !tw_le2(pi.graph);
}

// ---- the three general rules ------------------------------------------------

// Reduction "solution is known": a solution certifies the answer, so the
// graph collapses to the empty graph.
inline ReductionEvent apply_solution_known(ProblemInstance& pi, const VertexSet& solution) {
    if (!verify_solution(pi, solution))
        throw rejected_application("solution-is-known: set is not a solution");
    ReductionEvent ev;
    ev.rule = "solution-is-known";
    for (Vertex v : pi.graph.vertices()) ev.removed_vertices.push_back(v);
    pi.graph = Graph{};
    return ev;
}

// Reduction "no existing solution": the instance is a no-instance, so it
// collapses to (K4, 0). The K4 reuses the four smallest surviving ids since
// traces cannot introduce vertices.
inline ReductionEvent apply_no_solution(ProblemInstance& pi) {
    require(pi.graph.vertex_count() >= 4, "no-existing-solution: needs >= 4 vertices");
    ReductionEvent ev;
    ev.rule = "no-existing-solution";
    VertexSet keep;
    for (Vertex v : pi.graph.vertices()) {
        if (keep.size() < 4)
            keep.insert(v);
        else
            ev.removed_vertices.push_back(v);
    }
    pi.graph = pi.graph.induced(keep);
    for (Vertex a : keep)
        for (Vertex b : keep)
            if (a < b && !pi.graph.has_edge(a, b)) {
                pi.graph.add_edge(a, b);
                ev.added_edges.push_back({a, b});
            }
    ev.t_delta = -pi.t;
    pi.t = 0;
    return ev;
}

// Reduction "contract component": removes a connected subgraph H whose
// closed neighbourhood plus the clique on N(H) keeps treewidth <= 2, and
// completes N(H) into a clique.
inline ReductionEvent apply_contract_component(ProblemInstance& pi, const VertexSet& h) {
    require(is_connected_subset(pi.graph, h), "contract-component: H not connected");
    VertexSet nb = pi.graph.neighborhood(h);
    Graph probe = pi.graph.induced(set_union(h, nb));
    if (nb.size() == 2 && !probe.has_edge(*nb.begin(), *nb.rbegin()))
        probe.add_edge(*nb.begin(), *nb.rbegin());
    if (nb.size() > 2 || !tw_le2(probe))
        throw rejected_application("contract-component: closed neighbourhood check failed");
    ReductionEvent ev;
    ev.rule = "contract-component";
    ev.removed_vertices.assign(h.begin(), h.end());
    pi.graph = pi.graph.minus(h);
    if (nb.size() == 2 && !pi.graph.has_edge(*nb.begin(), *nb.rbegin())) {
        pi.graph.add_edge(*nb.begin(), *nb.rbegin());
        ev.added_edges.push_back({*nb.begin(), *nb.rbegin()});
    }
    return ev;
}

// Exhausts the trivial-instance rules: afterwards the instance either has at
// most four vertices or is non-trivial (and strictly smaller if any rule
// fired). Order per classification: width test before the budget test, so a
// solvable instance empties even at t = 0.
inline void reduce_trivial(ProblemInstance& pi, Trace& trace) {
    while (true) {
        TrivialClass c = classify_trivial(pi);
        switch (c.reason) {
            case TrivialReason::none:
            case TrivialReason::few_vertices:
                return;
            case TrivialReason::width_le2:
                trace.push_back(apply_solution_known(pi, {}));
                return;  // empty graph is final
            case TrivialReason::zero_budget:
                trace.push_back(apply_no_solution(pi));
                return;  // (K4, 0) is final
            case TrivialReason::contract_component:
                trace.push_back(apply_contract_component(pi, c.witness));
                break;
        }
    }
}

}  // namespace tw2k
