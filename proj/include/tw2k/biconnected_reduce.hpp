#pragma once

#include <algorithm>
#include <vector>

#include "tw2k/blockcut.hpp"
#include "tw2k/decompose.hpp"

namespace tw2k {

// Limit-1 evidence for the frequent-path rule, always supplied by the caller.
// A singleton interface is limit-1 unconditionally; a separator interface
// inherits the claim from an enclosing component separator.
struct LimitOneCertificate {
    enum class Kind { singleton, separator_interface };
    Kind kind = Kind::singleton;
    VertexSet interface;  // N_G(C) intersected with the rule's modulator
};

// ---- rule: frequent path neighbour ---------------------------------------------

// Removes the edge from x to the second of four path-visited neighbours,
// when the enclosed stretch hangs off a limit-1 slice of the modulator.
inline ReductionEvent apply_frequent_path_neighbour(ProblemInstance& pi, const VertexSet& x_mod,
                                                    Vertex x, const Path& p,
                                                    const std::array<Vertex, 4>& v,
                                                    const LimitOneCertificate& cert) {
    if (!x_mod.count(x)) throw rejected_application("frequent-path: x outside modulator");
    if (!is_tidy_modulator(pi.graph, x_mod))
        throw rejected_application("frequent-path: modulator not tidy");
    for (Vertex u : p)
        if (x_mod.count(u)) throw rejected_application("frequent-path: path touches modulator");
    if (!is_simple_path(pi.graph, p))
        throw rejected_application("frequent-path: not a simple path");
    std::size_t at = 0;
    for (Vertex want : v) {
        while (at < p.size() && p[at] != want) ++at;
        if (at == p.size())
            throw rejected_application("frequent-path: neighbours not in path order");
        if (!pi.graph.has_edge(want, x))
            throw rejected_application("frequent-path: listed vertex not adjacent to x");
        ++at;
    }

    // The component of G - (X + {v1, v4}) holding the interior stretch.
    VertexSet cut = set_union(x_mod, VertexSet{v[0], v[3]});
    Graph rest = pi.graph.minus(cut);
    VertexSet comp;
    for (const VertexSet& c : components(rest))
        if (c.count(v[1])) comp = c;
    if (comp.empty()) throw rejected_application("frequent-path: stretch vanished");
    std::size_t a_pos = p.size(), b_pos = p.size();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == v[0]) a_pos = i;
        if (p[i] == v[3]) b_pos = i;
    }
    for (std::size_t i = a_pos + 1; i < b_pos; ++i)
        if (!comp.count(p[i]))
            throw rejected_application("frequent-path: interior not in one component");
    VertexSet interface = set_intersect(pi.graph.neighborhood(comp), x_mod);
    if (interface != cert.interface)
        throw rejected_application("frequent-path: certificate interface mismatch");
    if (!interface.count(x))
        throw rejected_application("frequent-path: x outside the interface");
    if (cert.kind == LimitOneCertificate::Kind::singleton && interface.size() > 1)
        throw rejected_application("frequent-path: singleton certificate oversized");

    ReductionEvent ev;
    ev.rule = "frequent-path-neighbour";
    ev.removed_edges.push_back(make_edge(v[1], x));
    pi.graph.remove_edge(v[1], x);
    return ev;
}

// ---- rule: ladder ----------------------------------------------------------------

// p and q are the rails; rungs are nine (index-into-p, index-into-q) pairs,
// increasing in both coordinates. Removes the fifth rung.
inline ReductionEvent apply_ladder(ProblemInstance& pi, const Path& p, const Path& q,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& rungs) {
    if (rungs.size() != 9) throw rejected_application("ladder: needs nine rungs");
    if (!is_induced_path(pi.graph, p) || !is_induced_path(pi.graph, q))
        throw rejected_application("ladder: rails not induced paths");
    VertexSet pv(p.begin(), p.end()), qv(q.begin(), q.end());
    if (!disjoint(pv, qv)) throw rejected_application("ladder: rails intersect");
    for (std::size_t i = 0; i < rungs.size(); ++i) {
        auto [a, b] = rungs[i];
        if (a >= p.size() || b >= q.size())
            throw rejected_application("ladder: rung index out of range");
        if (!pi.graph.has_edge(p[a], q[b]))
            throw rejected_application("ladder: rung edge missing");
        if (i > 0 && (rungs[i - 1].first >= a || rungs[i - 1].second >= b))
            throw rejected_application("ladder: rungs out of order");
    }
    VertexSet span = set_union(pv, qv);
    if (!tw_le2(pi.graph.induced(span)))
        throw rejected_application("ladder: rail span exceeds width 2");
    VertexSet corners{p[rungs.front().first], p[rungs.back().first], q[rungs.front().second],
                      q[rungs.back().second]};
    for (Vertex u : span) {
        if (corners.count(u)) continue;
        for (Vertex w : pi.graph.neighbors(u))
            if (!span.count(w)) throw rejected_application("ladder: boundary leak");
    }

    // Non-crossing law: each rung separates the rail prefixes from the rail
    // suffixes inside the span.
    Graph span_graph = pi.graph.induced(span);
    for (auto [a, b] : rungs) {
        VertexSet prefix, suffix;
        for (std::size_t i = 0; i < p.size(); ++i) (i < a ? prefix : suffix).insert(p[i]);
        for (std::size_t i = 0; i < q.size(); ++i) (i < b ? prefix : suffix).insert(q[i]);
        suffix.erase(p[a]);
        suffix.erase(q[b]);
        Graph cutg = span_graph.minus(VertexSet{p[a], q[b]});
        for (const VertexSet& c : components(cutg))
            check(disjoint(c, prefix) || disjoint(c, suffix), "ladder: crossing edge pair");
    }

    ReductionEvent ev;
    ev.rule = "ladder";
    Edge mid = make_edge(p[rungs[4].first], q[rungs[4].second]);
    ev.removed_edges.push_back(mid);
    pi.graph.remove_edge(mid.first, mid.second);
    return ev;
}

// ---- finding reducible structures ---------------------------------------------

// Shared context for the recursion over a smooth decomposition of one
// biconnected induced subgraph of G - X.
struct BiconnectedContext {
    ProblemInstance* pi = nullptr;
    VertexSet x;         // tidy modulator
    Graph b;             // the biconnected subgraph, induced
    VertexSet boundary;  // vertices of b with neighbours outside b in G
    TreeDecomposition star;
    std::vector<std::vector<NodeId>> adj;

    VertexSet bag_union(const std::vector<NodeId>& nodes) const {
        return star.bag_union(nodes);
    }
};

namespace detail {

// Two vertex-disjoint induced paths covering the interior bags of a linear
// subtree with no outside-attached vertices; rail ends sit in the leaf bags.
inline std::pair<Path, Path> extract_parallel_paths_impl(const BiconnectedContext& ctx,
                                                         const std::vector<NodeId>& nodes) {
    require(nodes.size() >= 3, "parallel paths: need at least 3 nodes");
    auto bag = [&](std::size_t i) -> const VertexSet& { return ctx.star.bags[nodes[i]]; };

    // Base step on (b1, b2, b3): p sits in both adhesions, q only left,
    // r only right, and qr is an edge of B.
    VertexSet left = set_intersect(bag(0), bag(1));
    VertexSet right = set_intersect(bag(1), bag(2));
    check(left.size() == 2 && right.size() == 2, "parallel paths: adhesion sizes");
    VertexSet both = set_intersect(left, right);
    check(both.size() == 1, "parallel paths: base shared vertex");
    Vertex pkeep = *both.begin();
    Vertex qstart = *set_minus(left, both).begin();
    Vertex rnew = *set_minus(right, both).begin();
    check(ctx.b.has_edge(qstart, rnew), "parallel paths: base edge missing");
    Path p{pkeep}, q{qstart, rnew};

    for (std::size_t i = 2; i + 1 < nodes.size(); ++i) {
        VertexSet la = set_intersect(bag(i - 1), bag(i));
        VertexSet ra = set_intersect(bag(i), bag(i + 1));
        check(la.size() == 2 && ra.size() == 2, "parallel paths: adhesion sizes");
        check(la == VertexSet({p.back(), q.back()}), "parallel paths: rail ends drift");
        Vertex fresh = *set_minus(bag(i), la).begin();
        check(ra.count(fresh) == 1, "parallel paths: fresh vertex not carried");
        Vertex kept = *set_minus(ra, VertexSet{fresh}).begin();
        if (kept == p.back()) {
            check(ctx.b.has_edge(q.back(), fresh), "parallel paths: extension edge");
            q.push_back(fresh);
        } else {
            check(kept == q.back(), "parallel paths: adhesion mismatch");
            check(ctx.b.has_edge(p.back(), fresh), "parallel paths: extension edge");
            p.push_back(fresh);
        }
    }

    std::vector<NodeId> interior(nodes.begin() + 1, nodes.end() - 1);
    VertexSet want = ctx.bag_union(interior);
    VertexSet got(p.begin(), p.end());
    got.insert(q.begin(), q.end());
    check(got == want, "parallel paths: cover interior bags");
    check(is_induced_path(ctx.b, p) && is_induced_path(ctx.b, q),
          "parallel paths: rails not induced");
    return {p, q};
}

inline Vertex smallest(const VertexSet& s) { return *s.begin(); }

// Base core: a 7-node linear subtree whose bags all contain u and carry a
// fan of eight consecutive path vertices; fires the frequent-path rule on
// the middle fan edge.
inline ReductionEvent core_frequent(BiconnectedContext& ctx, const std::vector<NodeId>& nodes,
                                    Vertex u) {
    check(nodes.size() == 7, "core: needs exactly 7 nodes");
    auto bag = [&](std::size_t i) -> const VertexSet& { return ctx.star.bags[nodes[i]]; };
    std::vector<Vertex> fan(8, 0);
    for (std::size_t i = 0; i + 1 < 7; ++i) {
        VertexSet shared = set_minus(set_intersect(bag(i), bag(i + 1)), VertexSet{u});
        check(shared.size() == 1, "core: adhesion beyond u");
        fan[i + 1] = *shared.begin();
    }
    fan[0] = *set_minus(bag(0), VertexSet{u, fan[1]}).begin();
    fan[7] = *set_minus(bag(6), VertexSet{u, fan[6]}).begin();
    VertexSet distinct(fan.begin(), fan.end());
    check(distinct.size() == 8 && !distinct.count(u), "core: fan vertices collide");
    for (std::size_t i = 0; i < 7; ++i)
        check(bag(i) == VertexSet({u, fan[i], fan[i + 1]}), "core: bag structure");
    for (std::size_t i = 2; i <= 4; ++i)
        check(ctx.pi->graph.neighbors(fan[i]) == VertexSet({u, fan[i - 1], fan[i + 1]}),
              "core: interior fan degrees");

    Path path{fan[2], fan[3], fan[4], fan[5]};
    LimitOneCertificate cert;
    cert.kind = LimitOneCertificate::Kind::singleton;
    cert.interface = {u};
    return apply_frequent_path_neighbour(*ctx.pi, set_union(ctx.x, VertexSet{u}), u, path,
                                         {fan[2], fan[3], fan[4], fan[5]}, cert);
}

// Frequent-vertex descent: linear subtree fully
// inside u's occurrence, |nodes| >= 9|U|+7.
inline ReductionEvent reduce_frequent_vertex_path(BiconnectedContext& ctx,
                                                  std::vector<NodeId> nodes, Vertex u,
                                                  VertexSet u_set) {
    while (true) {
        check(nodes.size() >= 9 * u_set.size() + 7, "frequent-vertex: size precondition");
        for (NodeId t : nodes)
            check(ctx.star.bags[t].count(u) > 0, "frequent-vertex: u leaves the subtree");
        VertexSet beyond = set_minus(u_set, VertexSet{u});
        if (beyond.empty())
            return core_frequent(ctx, std::vector<NodeId>(nodes.begin(), nodes.begin() + 7), u);

        // v in U - {u} whose last bag is earliest; j = that position (0-based).
        std::size_t j = nodes.size();
        for (Vertex v : beyond) {
            std::size_t last = 0;
            for (std::size_t i = 0; i < nodes.size(); ++i)
                if (ctx.star.bags[nodes[i]].count(v)) last = i;
            j = std::min(j, last);
        }
        if (j + 1 <= 9) {  // a short prefix: drop it and recurse on the tail
            std::vector<NodeId> tail(nodes.begin() + j + 1, nodes.end());
            VertexSet u_tail = set_intersect(u_set, ctx.bag_union(tail));
            nodes = std::move(tail);
            u_set = std::move(u_tail);
            continue;
        }
        std::vector<NodeId> head(nodes.begin(), nodes.begin() + 7);
        VertexSet u_head = set_intersect(u_set, ctx.bag_union(head));
        check(is_subset(u_head, VertexSet{u}), "frequent-vertex: unreachable branch");
        return core_frequent(ctx, head, u);
    }
}

inline ReductionEvent find_ladder_reduction(BiconnectedContext& ctx,
                                            const std::vector<NodeId>& nodes);

// Long-path descent: a linear subtree of size >= 118|U| + 86.
inline ReductionEvent reduce_long_path(BiconnectedContext& ctx, std::vector<NodeId> nodes,
                                       VertexSet u_set) {
    while (true) {
        check(nodes.size() >= 118 * u_set.size() + 86, "long-path: size precondition");
        if (u_set.empty())
            return find_ladder_reduction(ctx, nodes);

        std::size_t j = nodes.size();
        for (Vertex v : u_set) {
            std::size_t last = 0;
            for (std::size_t i = 0; i < nodes.size(); ++i)
                if (ctx.star.bags[nodes[i]].count(v)) last = i;
            j = std::min(j, last);
        }
        if (j + 1 <= 118) {
            std::vector<NodeId> tail(nodes.begin() + j + 1, nodes.end());
            VertexSet u_tail = set_intersect(u_set, ctx.bag_union(tail));
            nodes = std::move(tail);
            u_set = std::move(u_tail);
            continue;
        }
        std::vector<NodeId> head86(nodes.begin(), nodes.begin() + 86);
        VertexSet u_head = set_intersect(u_set, ctx.bag_union(head86));
        if (u_head.empty())
            return find_ladder_reduction(ctx, head86);

        // Some boundary vertex spans bags 86..119 (1-based); a 34-node core.
        std::vector<NodeId> core(nodes.begin() + 85, nodes.begin() + 119);
        Vertex w = smallest(u_head);
        for (NodeId t : core)
            check(ctx.star.bags[t].count(w) > 0, "long-path: witness vertex not spanning");
        VertexSet u_core = set_intersect(u_set, ctx.bag_union(core));
        check(u_core.size() <= 3, "long-path: core boundary above bag size");
        return reduce_frequent_vertex_path(ctx, core, w, u_core);
    }
}

// Ladder search: U = 0, >= 86 nodes. Either some matched
// vertex sees four rail vertices (frequent-path) or nine ordered rungs give
// a ladder application.
inline ReductionEvent find_ladder_reduction(BiconnectedContext& ctx,
                                            const std::vector<NodeId>& nodes) {
    check(nodes.size() >= 86, "ladder search: needs 86 nodes");
    auto [p, q] = extract_parallel_paths_impl(ctx, nodes);

    std::map<Vertex, std::size_t> ppos, qpos;
    for (std::size_t i = 0; i < p.size(); ++i) ppos[p[i]] = i;
    for (std::size_t i = 0; i < q.size(); ++i) qpos[q[i]] = i;
    EdgeSet cross;
    for (Vertex a : p)
        for (Vertex b : q)
            if (ctx.b.has_edge(a, b)) cross.insert(make_edge(a, b));
    check(2 * cross.size() >= p.size() + q.size() - 4, "ladder search: cross edges scarce");
    check(cross.size() >= 41, "ladder search: at least 41 cross edges");

    EdgeSet matching;
    VertexSet used;
    for (const Edge& e : cross) {
        if (used.count(e.first) || used.count(e.second)) continue;
        matching.insert(e);
        used.insert(e.first);
        used.insert(e.second);
    }

    if (matching.size() <= 8) {
        // Maximality forces a matched vertex of cross-degree >= 4.
        Vertex r = 0;
        std::size_t best = 0;
        for (Vertex cand : used) {  // ascending ids, so the first max wins
            std::size_t deg = 0;
            for (const Edge& e : cross)
                if (e.first == cand || e.second == cand) ++deg;
            if (deg > best) {
                best = deg;
                r = cand;
            }
        }
        check(best >= 4, "ladder search: no frequent rail vertex");
        bool r_on_p = ppos.count(r) > 0;
        const Path& rail = r_on_p ? q : p;
        std::vector<Vertex> nbs;
        for (Vertex v : rail)
            if (ctx.b.has_edge(r, v)) nbs.push_back(v);
        check(nbs.size() >= 4, "ladder search: neighbour recount");
        std::array<Vertex, 4> four{nbs[0], nbs[1], nbs[2], nbs[3]};

        VertexSet xr = set_union(ctx.x, VertexSet{r});
        VertexSet cut = set_union(xr, VertexSet{four[0], four[3]});
        VertexSet comp;
        for (const VertexSet& c : components(ctx.pi->graph.minus(cut)))
            if (c.count(four[1])) comp = c;
        check(!comp.empty(), "ladder search: stretch component missing");
        check(set_intersect(ctx.pi->graph.neighborhood(comp), xr) == VertexSet{r},
              "ladder search: stretch sees more than r");
        LimitOneCertificate cert;
        cert.kind = LimitOneCertificate::Kind::singleton;
        cert.interface = {r};
        return apply_frequent_path_neighbour(*ctx.pi, xr, r, rail, four, cert);
    }

    // Order the matching along p; the non-crossing law makes the q-side
    // order agree. Trim the rails to the matched span and take rungs
    // 1,2,...,8 and the last.
    std::vector<std::pair<std::size_t, std::size_t>> rungs;
    for (const Edge& e : matching) {
        Vertex a = ppos.count(e.first) ? e.first : e.second;
        Vertex b = ppos.count(e.first) ? e.second : e.first;
        rungs.push_back({ppos[a], qpos[b]});
    }
    std::sort(rungs.begin(), rungs.end());
    for (std::size_t i = 1; i < rungs.size(); ++i)
        check(rungs[i - 1].second < rungs[i].second, "ladder search: crossing rungs");
    std::size_t p0 = rungs.front().first, p1 = rungs.back().first;
    std::size_t q0 = rungs.front().second, q1 = rungs.back().second;
    Path pr(p.begin() + p0, p.begin() + p1 + 1);
    Path qr(q.begin() + q0, q.begin() + q1 + 1);
    std::vector<std::pair<std::size_t, std::size_t>> nine;
    for (std::size_t i = 0; i < 8; ++i) nine.push_back({rungs[i].first - p0, rungs[i].second - q0});
    nine.push_back({rungs.back().first - p0, rungs.back().second - q0});
    return apply_ladder(*ctx.pi, pr, qr, nine);
}

// Tree descent: peel linear subtrees under the
// deepest branching node until one is large enough, else shrink the leaf
// count and repeat.
inline ReductionEvent reduce_big_tree(BiconnectedContext& ctx, std::vector<NodeId> tree,
                                      std::vector<NodeId> leaves, VertexSet u_set) {
    while (true) {
        check(tree.size() >= 876 * leaves.size() + 118 * u_set.size(),
              "big-tree: size precondition");
        std::set<NodeId> in_tree(tree.begin(), tree.end());
        auto deg = [&](NodeId v) {
            std::size_t d = 0;
            for (NodeId w : ctx.adj[v]) d += in_tree.count(w) ? 1 : 0;
            return d;
        };
        auto ordered_linear = [&](std::vector<NodeId> comp) {
            // order a linear node set from its smaller-id endpoint
            std::set<NodeId> cs(comp.begin(), comp.end());
            std::vector<NodeId> ends;
            for (NodeId v : comp) {
                std::size_t d = 0;
                for (NodeId w : ctx.adj[v]) d += cs.count(w) ? 1 : 0;
                if (d <= 1) ends.push_back(v);
            }
            check(!ends.empty(), "linear ordering: no endpoint");
            NodeId start = *std::min_element(ends.begin(), ends.end());
            std::vector<NodeId> out{start};
            std::set<NodeId> seen{start};
            while (out.size() < comp.size()) {
                bool advanced = false;
                for (NodeId w : ctx.adj[out.back()])
                    if (cs.count(w) && !seen.count(w)) {
                        out.push_back(w);
                        seen.insert(w);
                        advanced = true;
                        break;
                    }
                check(advanced, "linear ordering: walk stuck");
            }
            return out;
        };

        if (leaves.size() == 2) {
            std::vector<NodeId> path = ordered_linear(tree);
            return reduce_long_path(ctx, path, set_intersect(u_set, ctx.bag_union(path)));
        }

        // Root at the smallest leaf; find the deepest branching node.
        NodeId root = *std::min_element(leaves.begin(), leaves.end());
        std::map<NodeId, int> depth;
        std::map<NodeId, NodeId> parent;
        std::vector<NodeId> order{root};
        depth[root] = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (NodeId w : ctx.adj[order[i]])
                if (in_tree.count(w) && !depth.count(w)) {
                    depth[w] = depth[order[i]] + 1;
                    parent[w] = order[i];
                    order.push_back(w);
                }
        NodeId branch = root;
        bool found = false;
        for (NodeId v : order) {
            if (deg(v) < 3) continue;
            if (!found || depth[v] > depth[branch] ||
                (depth[v] == depth[branch] && v < branch)) {
                branch = v;
                found = true;
            }
        }
        check(found, "big-tree: no branching node despite 3+ leaves");

        // Descendant set of the branching node.
        std::set<NodeId> below{branch};
        for (NodeId v : order)
            if (v != branch && parent.count(v) && below.count(parent[v])) below.insert(v);
        std::vector<NodeId> sub_leaves;
        for (NodeId l : leaves)
            if (below.count(l)) sub_leaves.push_back(l);
        check(sub_leaves.size() == deg(branch) - 1, "big-tree: leaves under branch");
        std::sort(sub_leaves.begin(), sub_leaves.end());

        for (NodeId l : sub_leaves) {
            // The linear component of F - branch containing l, plus branch.
            std::vector<NodeId> chain{l};
            std::set<NodeId> seen{l};
            while (chain.back() != branch) {
                NodeId cur = chain.back();
                bool advanced = false;
                for (NodeId w : ctx.adj[cur])
                    if (in_tree.count(w) && !seen.count(w) &&
                        (w == branch || below.count(w))) {
                        chain.push_back(w);
                        seen.insert(w);
                        advanced = true;
                        break;
                    }
                check(advanced, "big-tree: chain walk stuck");
            }
            VertexSet u_chain = set_intersect(u_set, ctx.bag_union(chain));
            if (chain.size() >= 118 * u_chain.size() + 86)
                return reduce_long_path(ctx, ordered_linear(chain), u_chain);
        }

        // No linear subtree qualified: drop them all and keep going with one
        // fewer leaf class.
        std::vector<NodeId> next_tree;
        for (NodeId v : tree)
            if (!below.count(v) || v == branch) next_tree.push_back(v);
        std::vector<NodeId> next_leaves;
        for (NodeId l : leaves)
            if (!below.count(l)) next_leaves.push_back(l);
        next_leaves.push_back(branch);
        VertexSet next_u = set_intersect(u_set, ctx.bag_union(next_tree));
        check(next_leaves.size() < leaves.size(), "big-tree: leaf count must drop");
        tree = std::move(next_tree);
        leaves = std::move(next_leaves);
        u_set = std::move(next_u);
    }
}

}  // namespace detail

// Exposed for tests and for the block-cut module: the two-leaf extraction.
// The spanned bags must hold no vertex with neighbours outside b.
inline std::pair<Path, Path> extract_parallel_paths(const ProblemInstance& pi, const VertexSet& x,
                                                    const Graph& b, const TreeDecomposition& star,
                                                    const std::vector<NodeId>& linear_nodes) {
    BiconnectedContext ctx;
    ctx.pi = const_cast<ProblemInstance*>(&pi);
    ctx.x = x;
    ctx.b = b;
    ctx.star = star;
    ctx.adj = star.adjacency();
    for (Vertex v : star.bag_union(linear_nodes))
        for (Vertex w : pi.graph.neighbors(v))
            require(b.has_vertex(w), "extract_parallel_paths: spanned vertex leaves b");
    return detail::extract_parallel_paths_impl(ctx, linear_nodes);
}

// Entry point: one edge of a big biconnected
// induced subgraph of G - X goes away via the fan or ladder rule.
inline ReductionEvent reduce_biconnected(ProblemInstance& pi, const VertexSet& x_mod,
                                         const VertexSet& b_set, Trace& trace) {
    require(plausibly_nontrivial(pi), "reduce_biconnected: trivial instance");
    require(disjoint(b_set, x_mod), "reduce_biconnected: B meets X");
    require(b_set.size() >= 1988 * x_mod.size() + 2, "reduce_biconnected: B below threshold");
    Graph b = pi.graph.induced(b_set);
    require(is_biconnected(b), "reduce_biconnected: B not biconnected");
    require(is_tidy_modulator(pi.graph, x_mod), "reduce_biconnected: X not tidy");

    BiconnectedContext ctx;
    ctx.pi = &pi;
    ctx.x = x_mod;
    ctx.b = std::move(b);
    for (Vertex v : b_set)
        for (Vertex w : pi.graph.neighbors(v))
            if (!b_set.count(w)) ctx.boundary.insert(v);
    check(ctx.boundary.size() <= 2 * x_mod.size(), "boundary bound |dB| <= 2|X|");

    ctx.star = smooth(ctx.b, decompose_width2(ctx.b));
    ctx.adj = ctx.star.adjacency();

    // Leaf structure laws: single-occurrence vertices lie on the boundary,
    // and every leaf bag owns one.
    std::map<Vertex, std::size_t> occurrences;
    for (const VertexSet& bag : ctx.star.bags)
        for (Vertex v : bag) occurrences[v]++;
    for (const auto& [v, n] : occurrences)
        if (n == 1) check(ctx.boundary.count(v) > 0, "single-occurrence vertex off boundary");
    std::vector<NodeId> leaves;
    std::vector<NodeId> all_nodes;
    for (NodeId t = 0; t < ctx.star.node_count(); ++t) {
        all_nodes.push_back(t);
        if (ctx.adj[t].size() <= 1) leaves.push_back(t);
    }
    for (NodeId l : leaves) {
        bool priv = false;
        for (Vertex v : ctx.star.bags[l]) priv = priv || occurrences[v] == 1;
        check(priv, "leaf bag without private vertex");
    }

    VertexSet u_set = set_intersect(ctx.bag_union(all_nodes), ctx.boundary);
    check(leaves.size() >= 2 && leaves.size() <= u_set.size(), "leaf count law");
    ReductionEvent ev = detail::reduce_big_tree(ctx, all_nodes, leaves, u_set);
    check(!ev.removed_edges.empty(), "biconnected reduction must drop an edge");
    for (const Edge& e : ev.removed_edges)
        check(!x_mod.count(e.first) || !x_mod.count(e.second), "removed edge inside G[X]");
    trace.push_back(ev);
    return ev;
}

}  // namespace tw2k
