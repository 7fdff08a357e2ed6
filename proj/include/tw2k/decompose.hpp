#pragma once

#include <functional>
#include <optional>

#include "tw2k/bounds.hpp"
#include "tw2k/flow.hpp"
#include "tw2k/limits.hpp"

namespace tw2k {

// Pluggable modulator approximator. The returned set is always verified to
// be a modulator; the declared ratio is metadata that the caller trusts.
// Implementations without a guaranteed ratio never trigger the no-solution
// branch.
struct Approximator {
    std::string name;
    std::function<VertexSet(const Graph&)> run;
    std::optional<Rational> guaranteed_ratio;
};

inline Approximator exact_approximator() {
    Approximator a;
    a.name = "exact";
    a.guaranteed_ratio = Rational(1, 1);
    a.run = [](const Graph& g) { return oracle::exact_tw2d(g, g.vertex_count())->one_solution; };
    return a;
}

// Deletes whole K4 witnesses until none remain. No approximation guarantee.
inline Approximator greedy_approximator() {
    Approximator a;
    a.name = "greedy";
    a.run = [](const Graph& g) {
        Graph h = g;
        VertexSet out;
        while (true) {
            auto r = try_width2(h);
            if (std::holds_alternative<TreeDecomposition>(r)) break;
            const K4Witness& w = std::get<K4Witness>(r);
            for (const VertexSet& part : w.parts) {
                out.insert(part.begin(), part.end());
                h = h.minus(part);
            }
        }
        return out;
    };
    return a;
}

// ---- rule: remove limit-0 subset --------------------------------------------

inline ReductionEvent apply_remove_limit0(ProblemInstance& pi, const LimitCertificate& cert) {
    if (cert.m != 0 || cert.subject.empty())
        throw rejected_application("remove-limit-0: certificate is not limit-0");
    if (cert.witnesses.size() != static_cast<std::size_t>(pi.t) + 1 ||
        cert.models.size() != cert.witnesses.size())
        throw rejected_application("remove-limit-0: wrong witness count");
    if (static_cast<std::size_t>(pi.t) < cert.subject.size())
        throw rejected_application("remove-limit-0: budget below subject size");
    for (std::size_t i = 0; i < cert.witnesses.size(); ++i) {
        if (!disjoint(cert.witnesses[i], cert.subject))
            throw rejected_application("remove-limit-0: witness meets subject");
        for (std::size_t j = i + 1; j < cert.witnesses.size(); ++j)
            if (!disjoint(cert.witnesses[i], cert.witnesses[j]))
                throw rejected_application("remove-limit-0: witnesses overlap");
        Graph probe = pi.graph.induced(set_union(cert.witnesses[i], cert.subject));
        if (!verify_k4_model(probe, cert.models[i]))
            throw rejected_application("remove-limit-0: witness model invalid");
    }
    ReductionEvent ev;
    ev.rule = "remove-limit-0-subset";
    ev.removed_vertices.assign(cert.subject.begin(), cert.subject.end());
    ev.t_delta = -static_cast<int>(cert.subject.size());
    pi.graph = pi.graph.minus(cert.subject);
    pi.t += ev.t_delta;
    return ev;
}

// ---- approximation step ------------------------------------------------------

// Three-way split: a known solution empties the graph, an
// oversized approximation proves a no-instance, otherwise the modulator
// comes back with t < |X| <= eps*t.
inline std::optional<VertexSet> approximate_modulator(ProblemInstance& pi,
                                                      const Approximator& approx, Trace& trace) {
    VertexSet x = approx.run(pi.graph);
    for (Vertex v : x)
        if (!pi.graph.has_vertex(v))
            throw approximator_error("approximator returned unknown vertex");
    if (!tw_le2(pi.graph.minus(x)))
        throw approximator_error("approximator output is not a modulator");
    if (x.size() <= static_cast<std::size_t>(pi.t)) {
        trace.push_back(apply_solution_known(pi, x));
        return std::nullopt;
    }
    if (approx.guaranteed_ratio) {
        // |X| > eps*t  <=>  |X| * den > num * t
        const Rational& eps = *approx.guaranteed_ratio;
        if (BigUint(eps.num) * BigUint(static_cast<std::uint64_t>(pi.t)) <
            BigUint(x.size()) * BigUint(eps.den)) {
            trace.push_back(apply_no_solution(pi));
            return std::nullopt;
        }
    }
    return x;
}

// ---- tidy modulators ---------------------------------------------------------

inline bool is_tidy_modulator(const Graph& g, const VertexSet& x) {
    if (!tw_le2(g.minus(x))) return false;
    for (Vertex v : x)
        if (!tw_le2(g.minus(set_minus(x, VertexSet{v})))) return false;
    return true;
}

inline bool is_linked_set(const Graph& g, int t, const VertexSet& x) {
    for (Vertex a : x)
        for (Vertex b : x)
            if (a < b && !g.has_edge(a, b) &&
                max_disjoint_paths(g, a, b).size() > static_cast<std::size_t>(t) + 2)
                return false;
    return true;
}

// Grows a modulator into a tidy one of size <= (3t+4)|X|, or fires the
// limit-0 rule on one of its vertices.
inline std::optional<VertexSet> tidy_modulator(ProblemInstance& pi, const VertexSet& x,
                                               Trace& trace) {
    require(plausibly_nontrivial(pi), "tidy_modulator: trivial instance");
    require(tw_le2(pi.graph.minus(x)), "tidy_modulator: X is not a modulator");
    std::size_t cap = (3 * static_cast<std::size_t>(pi.t) + 4) * x.size();
    if (pi.graph.vertex_count() <= cap) return pi.graph.vertices();

    VertexSet tidy = x;
    for (Vertex v : x) {
        Graph sub = pi.graph.minus(set_minus(x, VertexSet{v}));
        DisjointModulatorResult r = find_disjoint_modulator(sub, pi.t, {v});
        if (r.outcome == ModulatorOutcome::limit_per_component) {
            // {v} is limit-0 for the whole instance: any t+1 partition
            // members are witnesses already living in G.
            LimitCertificate cert;
            cert.subject = {v};
            cert.m = 0;
            for (std::size_t i = 0; i + 1 < r.partition.size(); ++i) {
                const VertexSet& d = r.partition[i];
                auto k4 = try_width2(pi.graph.induced(set_union(d, cert.subject)));
                check(std::holds_alternative<K4Witness>(k4), "limit-0 witness lost in lift");
                cert.witnesses.push_back(d);
                cert.models.push_back(std::get<K4Witness>(k4));
            }
            trace.push_back(apply_remove_limit0(pi, cert));
            return std::nullopt;
        }
        tidy = set_union(tidy, r.y);
    }
    check(tidy.size() <= cap, "tidy modulator size bound");
    check(is_tidy_modulator(pi.graph, tidy), "tidy modulator flag");
    return tidy;
}

// ---- rule: add necessary edge -----------------------------------------------

inline ReductionEvent apply_add_necessary_edge(ProblemInstance& pi, Vertex a, Vertex b) {
    require(a != b && pi.graph.has_vertex(a) && pi.graph.has_vertex(b),
            "add-necessary-edge: bad pair");
    if (pi.graph.has_edge(a, b))
        throw rejected_application("add-necessary-edge: already adjacent");
    if (max_disjoint_paths(pi.graph, a, b).size() < static_cast<std::size_t>(pi.t) + 3)
        throw rejected_application("add-necessary-edge: below t+3 disjoint paths");
    pi.graph.add_edge(a, b);
    ReductionEvent ev;
    ev.rule = "add-necessary-edge";
    ev.added_edges.push_back(make_edge(a, b));
    return ev;
}

// Exhausts the edge rule on pairs inside a tidy modulator, making it linked.
inline void link_modulator(ProblemInstance& pi, const VertexSet& x, Trace& trace) {
    bool again = true;
    while (again) {
        again = false;
        for (Vertex a : x) {
            for (Vertex b : x) {
                if (a >= b || pi.graph.has_edge(a, b)) continue;
                if (max_disjoint_paths(pi.graph, a, b).size() >=
                    static_cast<std::size_t>(pi.t) + 3) {
                    trace.push_back(apply_add_necessary_edge(pi, a, b));
                    again = true;
                }
            }
        }
    }
    check(is_linked_set(pi.graph, pi.t, x), "link_modulator: not linked after exhaustion");
}

// ---- rule: reduce number of components ----------------------------------------

// Constructive application via the P/Q/R exclusion families: when G - X has
// more than Cbound(t,|X|) components, some surviving component passes every
// certificate check and is removed. Returns false when below the threshold.
inline bool reduce_component_count(ProblemInstance& pi, const VertexSet& x, Trace& trace) {
    std::vector<VertexSet> comps = components(pi.graph.minus(x));
    if (BigUint(comps.size()) <=
        cbound(BigUint(static_cast<std::uint64_t>(pi.t)), BigUint(x.size())))
        return false;

    std::size_t n = comps.size();
    std::vector<VertexSet> nb(n);
    for (std::size_t i = 0; i < n; ++i) nb[i] = pi.graph.neighborhood(comps[i]);
    std::size_t t = static_cast<std::size_t>(pi.t);

    std::vector<char> excluded(n, 0);
    std::vector<Vertex> xs(x.begin(), x.end());
    // P: pairs seen by at most t+2 components.
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b) {
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i < n; ++i)
                if (nb[i].count(xs[a]) && nb[i].count(xs[b])) hits.push_back(i);
            if (hits.size() <= t + 2)
                for (std::size_t i : hits) excluded[i] = 1;
        }
    std::vector<char> in_p = excluded;
    // Q: triples seen by at most t+1 surviving components.
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b)
            for (std::size_t c = b + 1; c < xs.size(); ++c) {
                std::vector<std::size_t> hits;
                for (std::size_t i = 0; i < n; ++i)
                    if (!in_p[i] && nb[i].count(xs[a]) && nb[i].count(xs[b]) &&
                        nb[i].count(xs[c]))
                        hits.push_back(i);
                if (hits.size() <= t + 1)
                    for (std::size_t i : hits) excluded[i] = 1;
            }
    // R: pairs whose width-violating component count is at most t+1.
    std::vector<std::vector<std::size_t>> viol(xs.size() * xs.size());
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b) {
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i < n; ++i)
                if (!tw_le2(pi.graph.induced(
                        set_union(comps[i], VertexSet{xs[a], xs[b]}))))
                    hits.push_back(i);
            viol[a * xs.size() + b] = hits;
            if (hits.size() <= t + 1)
                for (std::size_t i : hits) excluded[i] = 1;
        }

    for (std::size_t i = 0; i < n; ++i) {
        if (excluded[i]) continue;
        // Certificate checks for the chosen component.
        bool ok = true;
        for (Vertex a : nb[i])
            for (Vertex b : nb[i])
                if (a < b && !pi.graph.has_edge(a, b)) ok = false;
        check(ok, "reduce-components: interface not a clique");
        for (std::size_t a = 0; a < xs.size() && ok; ++a)
            for (std::size_t b = a + 1; b < xs.size() && ok; ++b) {
                if (!nb[i].count(xs[a]) || !nb[i].count(xs[b])) continue;
                const auto& hits = viol[a * xs.size() + b];
                bool fine = tw_le2(pi.graph.induced(
                    set_union(comps[i], VertexSet{xs[a], xs[b]})));
                std::size_t others = hits.size();
                for (std::size_t h : hits)
                    if (h == i) --others;
                check(fine || others >= t + 1, "reduce-components: pair certificate");
            }
        ReductionEvent ev;
        ev.rule = "reduce-number-of-components";
        ev.removed_vertices.assign(comps[i].begin(), comps[i].end());
        pi.graph = pi.graph.minus(comps[i]);
        trace.push_back(std::move(ev));
        return true;
    }
    throw invariant_violation("reduce-components: threshold exceeded but nothing qualified");
}

// Links a tidy modulator first, then removes one component; used where the
// component cap is exceeded for a modulator that is not yet linked. The net
// effect always loses a vertex.
inline void reduce_component_count_after_linking(ProblemInstance& pi, const VertexSet& x,
                                                 Trace& trace) {
    link_modulator(pi, x, trace);
    check(reduce_component_count(pi, x, trace), "component cap exceeded but rule idle");
}

// ---- component separators ------------------------------------------------------

// Separator for one modulator pair; nullopt when the instance got reduced
// instead (the with-edge branch can hit the component cap).
inline std::optional<VertexSet> pair_separator(ProblemInstance& pi, const VertexSet& x, Vertex a,
                                               Vertex b, Trace& trace) {
    VertexSet others = set_minus(x, VertexSet{a, b});
    Graph sub = pi.graph.minus(others);
    if (!pi.graph.has_edge(a, b)) {
        VertexSet sep = min_separator(sub, a, b);
        check(sep.size() <= static_cast<std::size_t>(pi.t) + 2,
              "pair separator exceeds t+2 despite linked modulator");
        return sep;
    }
    DisjointModulatorResult r = find_disjoint_modulator(sub, pi.t, {a, b});
    if (r.outcome == ModulatorOutcome::limit_per_component) return r.y;

    std::vector<VertexSet> comps = components(pi.graph.minus(set_union(x, r.y)));
    BigUint cap = cbound(BigUint(static_cast<std::uint64_t>(pi.t)),
                         BigUint(x.size() + 3 * static_cast<std::size_t>(pi.t) + 3));
    if (cap < BigUint(comps.size())) {
        reduce_component_count_after_linking(pi, set_union(x, r.y), trace);
        return std::nullopt;
    }
    VertexSet y = r.y;
    for (const VertexSet& d : comps) {
        Graph probe = pi.graph.induced(set_union(d, VertexSet{a, b}));
        if (probe.has_edge(a, b)) probe.remove_edge(a, b);
        MengerResult m = max_paths_and_separator(probe, a, b);
        check(m.separator.size() <= 1, "per-component separator above one vertex");
        y = set_union(y, m.separator);
    }
    return y;
}

// Component separator for a linked tidy modulator: union of per-pair
// separators. Every component of G - (X+Y) then sees a limit-1 slice of X.
inline std::optional<VertexSet> component_separator(ProblemInstance& pi, const VertexSet& x,
                                                    Trace& trace) {
    require(plausibly_nontrivial(pi), "component_separator: trivial instance");
    require(is_tidy_modulator(pi.graph, x), "component_separator: X not tidy");
    require(is_linked_set(pi.graph, pi.t, x), "component_separator: X not linked");
    VertexSet y;
    std::vector<Vertex> xs(x.begin(), x.end());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            auto part = pair_separator(pi, x, xs[i], xs[j], trace);
            if (!part) return std::nullopt;
            y = set_union(y, *part);
        }
    check(disjoint(y, x), "component separator meets X");
    return y;
}

// ---- LCA-closure shrink ---------------------------------------------------------

namespace detail {

// Closure of `marked` under pairwise lowest common ancestors, per component
// decomposition tree rooted at node 0.
inline std::vector<NodeId> lca_closure(const TreeDecomposition& td,
                                       const std::vector<NodeId>& marked) {
    auto adj = td.adjacency();
    std::size_t n = td.node_count();
    std::vector<int> depth(n, -1), parent(n, -1), tin(n, 0);
    int timer = 0;
    std::vector<NodeId> stack{0};
    depth[0] = 0;
    // iterative DFS for preorder times
    std::vector<std::pair<NodeId, std::size_t>> frames{{0, 0}};
    tin[0] = timer++;
    while (!frames.empty()) {
        auto& [v, i] = frames.back();
        if (i < adj[v].size()) {
            NodeId c = adj[v][i++];
            if (depth[c] < 0) {
                depth[c] = depth[v] + 1;
                parent[c] = static_cast<int>(v);
                tin[c] = timer++;
                frames.push_back({c, 0});
            }
        } else {
            frames.pop_back();
        }
    }
    auto lca = [&](NodeId a, NodeId b) {
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            a = static_cast<NodeId>(parent[a]);
        }
        return a;
    };
    std::vector<NodeId> sorted = marked;
    std::sort(sorted.begin(), sorted.end(),
              [&](NodeId a, NodeId b) { return tin[a] < tin[b]; });
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::set<NodeId> closure(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) closure.insert(lca(sorted[i], sorted[i + 1]));
    return std::vector<NodeId>(closure.begin(), closure.end());
}

}  // namespace detail

// Grows a component separator Y to Y' (|Y'| <= 6|Y|) so that every component
// of G - (X+Y') has at most four Y'-neighbours: per component of G - X, mark
// the topmost bag of every Y vertex in a smooth decomposition and absorb the
// bags of the LCA closure.
inline VertexSet shrink_y_neighbourhoods(const Graph& g, const VertexSet& x, const VertexSet& y) {
    Graph h = g.minus(x);
    require(tw_le2(h), "shrink: G - X must have width 2");
    for (Vertex v : y) require(h.has_vertex(v), "shrink: Y must avoid X");

    // Nothing to do when every component already sees at most four Y vertices.
    bool settled = true;
    for (const VertexSet& c : components(g.minus(set_union(x, y))))
        settled = settled && set_intersect(g.neighborhood(c), y).size() <= 4;
    if (settled) return y;

    VertexSet out = y;
    for (const VertexSet& comp : components(h)) {
        VertexSet zc = set_intersect(y, comp);
        if (zc.empty() || comp.size() < 3) continue;
        TreeDecomposition td = smooth(h.induced(comp), decompose_width2(h.induced(comp)));
        auto adj = td.adjacency();
        std::vector<int> depth(td.node_count(), -1);
        std::vector<NodeId> order{0};
        depth[0] = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (NodeId b : adj[order[i]])
                if (depth[b] < 0) {
                    depth[b] = depth[order[i]] + 1;
                    order.push_back(b);
                }
        std::vector<NodeId> marked;
        for (Vertex z : zc) {
            NodeId best = 0;
            int best_depth = -1;
            for (NodeId t = 0; t < td.node_count(); ++t)
                if (td.bags[t].count(z) && (best_depth < 0 || depth[t] < best_depth)) {
                    best = t;
                    best_depth = depth[t];
                }
            marked.push_back(best);
        }
        for (NodeId m : detail::lca_closure(td, marked))
            out.insert(td.bags[m].begin(), td.bags[m].end());
    }

    check(out.size() <= 6 * y.size() || y.empty(), "shrink: |Y'| <= 6|Y|");
    check(is_subset(y, out), "shrink: Y' contains Y");
    for (const VertexSet& c : components(g.minus(set_union(x, out))))
        check(set_intersect(g.neighborhood(c), out).size() <= 4,
              "shrink: component with more than 4 Y'-neighbours");
    return out;
}

// ---- the combined decomposition steps ---------------------------------------------

// Approximate, tidy, link. Returns the linked tidy modulator, or nullopt
// when a rule reduced the instance instead.
inline std::optional<VertexSet> get_linked_tidy_modulator(ProblemInstance& pi,
                                                          const Approximator& approx,
                                                          Trace& trace) {
    require(plausibly_nontrivial(pi), "get_linked_tidy_modulator: trivial instance");
    auto x = approximate_modulator(pi, approx, trace);
    if (!x) return std::nullopt;
    auto tidy = tidy_modulator(pi, *x, trace);
    if (!tidy) return std::nullopt;
    link_modulator(pi, *tidy, trace);
    if (approx.guaranteed_ratio) {
        // |X'| <= (3t+4) * eps * t, conservatively through the ceiling cap.
        BigUint cap = modulator_cap(static_cast<std::uint64_t>(pi.t), *approx.guaranteed_ratio);
        check(BigUint(tidy->size()) <= BigUint(3 * static_cast<std::uint64_t>(pi.t) + 4) * cap,
              "linked tidy modulator size bound");
    }
    return tidy;
}

// Component separator with the post-shrink four-neighbour property and the
// component-count cap; nullopt when the instance got reduced.
inline std::optional<VertexSet> get_separator(ProblemInstance& pi, const VertexSet& x,
                                              Trace& trace) {
    auto y = component_separator(pi, x, trace);
    if (!y) return std::nullopt;
    VertexSet y2 = shrink_y_neighbourhoods(pi.graph, x, *y);
    std::vector<VertexSet> comps = components(pi.graph.minus(set_union(x, y2)));
    if (cbound(BigUint(static_cast<std::uint64_t>(pi.t)), BigUint(x.size() + y2.size())) <
        BigUint(comps.size())) {
        reduce_component_count_after_linking(pi, set_union(x, y2), trace);
        return std::nullopt;
    }
    check(BigUint(y2.size()) <=
              ybound(BigUint(static_cast<std::uint64_t>(pi.t)), BigUint(x.size())),
          "separator size above Ybound");
    return y2;
}

}  // namespace tw2k
