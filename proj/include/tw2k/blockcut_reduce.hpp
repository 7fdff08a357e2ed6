#pragma once

#include <algorithm>
#include <variant>
#include <vector>

#include "tw2k/biconnected_reduce.hpp"
#include "tw2k/blockcut.hpp"

namespace tw2k {

// Alternating articulation/block path in a block-cut tree:
// arts[0], blocks[0], arts[1], ..., blocks[k-1], arts[k].
struct BlockPath {
    std::vector<Vertex> arts;
    std::vector<int> blocks;  // indices into the owning BlockCutTree
};

// ---- rule: contract leaf block -----------------------------------------------

// Contracts a leaf block B into its articulation a. The interface
// N(B - a) - {a} must be limit-1 for (G - B, t) (caller certificate) and
// every interface vertex must keep width 2 on B plus the ax edge.
inline ReductionEvent apply_contract_leaf_block(ProblemInstance& pi, const VertexSet& x_mod,
                                                const VertexSet& y_sep, const VertexSet& c,
                                                const BlockCutTree& bct, int block, Vertex a,
                                                const LimitOneCertificate& cert) {
    const VertexSet& bset = bct.blocks[static_cast<std::size_t>(block)];
    if (!bset.count(a) || !bct.is_articulation(a))
        throw rejected_application("contract-leaf: a not an articulation of the block");
    for (Vertex other : set_intersect(bset, bct.articulations))
        if (other != a) throw rejected_application("contract-leaf: block is not a leaf");

    VertexSet inner = set_minus(bset, VertexSet{a});
    VertexSet z = set_minus(pi.graph.neighborhood(inner), VertexSet{a});
    if (z.empty())
        throw rejected_application("contract-leaf: interface empty, contract-component applies");
    if (z != cert.interface)
        throw rejected_application("contract-leaf: certificate interface mismatch");
    if (cert.kind == LimitOneCertificate::Kind::singleton) {
        if (z.size() > 1) throw rejected_application("contract-leaf: singleton cert oversized");
    } else {
        if (!disjoint(z, y_sep) || !is_subset(z, set_intersect(pi.graph.neighborhood(c), x_mod)))
            throw rejected_application("contract-leaf: separator cert out of place");
    }
    for (Vertex x : z) {
        Graph probe = pi.graph.induced(set_union(bset, VertexSet{x}));
        if (!probe.has_edge(a, x)) probe.add_edge(a, x);
        if (!tw_le2(probe))
            throw rejected_application("contract-leaf: width check on B + x failed");
    }

    ReductionEvent ev;
    ev.rule = "contract-leaf-block";
    ev.removed_vertices.assign(inner.begin(), inner.end());
    VertexSet outside = pi.graph.neighborhood(bset);
    VertexSet old_nb = pi.graph.neighbors(a);
    pi.graph = contract_into(pi.graph, bset, a);
    for (Vertex u : outside)
        if (u != a && !old_nb.count(u)) ev.added_edges.push_back(make_edge(a, u));
    return ev;
}

// ---- rule: contract blocks without X+Y neighbours ------------------------------

// Three consecutive bare blocks on a block path: contract the first into its
// leading articulation. The width consequence of non-triviality is checked
// directly on the middle and trailing blocks.
inline ReductionEvent apply_contract_neighbourless(ProblemInstance& pi, const VertexSet& x_mod,
                                                   const BlockCutTree& bct, const BlockPath& bp,
                                                   std::size_t i) {
    require(i + 2 < bp.blocks.size(), "contract-neighbourless: segment out of range");
    const VertexSet& b1 = bct.blocks[static_cast<std::size_t>(bp.blocks[i])];
    const VertexSet& b2 = bct.blocks[static_cast<std::size_t>(bp.blocks[i + 1])];
    const VertexSet& b3 = bct.blocks[static_cast<std::size_t>(bp.blocks[i + 2])];
    Vertex a1 = bp.arts[i], a2 = bp.arts[i + 1], a4 = bp.arts[i + 3];
    VertexSet span = set_union(set_union(b1, b2), b3);
    VertexSet interior = set_minus(span, VertexSet{a1, a4});
    if (pi.graph.neighborhood(interior) != VertexSet({a1, a4}))
        throw rejected_application("contract-neighbourless: outside contact");
    Graph probe = pi.graph.induced(set_union(b2, b3));
    if (!probe.has_edge(a2, a4)) probe.add_edge(a2, a4);
    if (tw_le2(probe))
        throw rejected_application(
            "contract-neighbourless: tail blocks reducible, contract-component applies");

    ReductionEvent ev;
    ev.rule = "contract-neighbourless-blocks";
    VertexSet inner = set_minus(b1, VertexSet{a1});
    ev.removed_vertices.assign(inner.begin(), inner.end());
    VertexSet outside = pi.graph.neighborhood(b1);
    VertexSet old_nb = pi.graph.neighbors(a1);
    pi.graph = contract_into(pi.graph, b1, a1);
    for (Vertex u : outside)
        if (u != a1 && !old_nb.count(u)) ev.added_edges.push_back(make_edge(a1, u));
    (void)x_mod;
    return ev;
}

// ---- leaf overflow -------------------------------------------------------------

struct LeafApplication {
    int block;
    Vertex articulation;
    LimitOneCertificate cert;
};

// When a block-cut tree carries more than Lbound leaves, the two exclusion
// families (few-witness Y/neighbour pairs; unique x-neighbour blocks) cannot
// cover them all, and some leaf block qualifies for contraction.
inline std::optional<LeafApplication> detect_leaf_overflow(const ProblemInstance& pi,
                                                           const VertexSet& x_mod,
                                                           const VertexSet& y_sep,
                                                           const VertexSet& c,
                                                           const BlockCutTree& bct) {
    std::vector<std::pair<int, Vertex>> leaf_pairs;
    for (int b = 0; b < static_cast<int>(bct.blocks.size()); ++b) {
        VertexSet arts = set_intersect(bct.blocks[static_cast<std::size_t>(b)], bct.articulations);
        if (arts.size() == 1 && bct.blocks.size() > 1) leaf_pairs.push_back({b, *arts.begin()});
    }
    VertexSet ny = set_intersect(pi.graph.neighborhood(c), y_sep);
    VertexSet nc = pi.graph.neighborhood(c);
    BigUint lbnd = lbound(BigUint(static_cast<std::uint64_t>(pi.t)), BigUint(x_mod.size()),
                          BigUint(ny.size()));
    if (BigUint(leaf_pairs.size()) <= lbnd) return std::nullopt;

    std::vector<VertexSet> iface(leaf_pairs.size());
    for (std::size_t i = 0; i < leaf_pairs.size(); ++i) {
        VertexSet inner = set_minus(bct.blocks[static_cast<std::size_t>(leaf_pairs[i].first)],
                                    VertexSet{leaf_pairs[i].second});
        iface[i] = pi.graph.neighborhood(inner);  // may include the articulation
    }
    std::vector<char> excluded(leaf_pairs.size(), 0);
    std::size_t t = static_cast<std::size_t>(pi.t);
    for (Vertex y : ny)
        for (Vertex z : nc) {
            if (z == y) continue;
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i < leaf_pairs.size(); ++i)
                if (iface[i].count(y) && iface[i].count(z)) hits.push_back(i);
            if (hits.size() <= t + 2)
                for (std::size_t i : hits) excluded[i] = 1;
        }
    for (Vertex x : nc) {
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < leaf_pairs.size(); ++i)
            if (iface[i].count(x)) hits.push_back(i);
        if (hits.size() <= 1)
            for (std::size_t i : hits) excluded[i] = 1;
    }

    for (std::size_t i = 0; i < leaf_pairs.size(); ++i) {
        if (excluded[i]) continue;
        VertexSet z = set_minus(iface[i], VertexSet{leaf_pairs[i].second});
        if (z.empty()) continue;  // contract-component territory, not this rule
        LeafApplication app;
        app.block = leaf_pairs[i].first;
        app.articulation = leaf_pairs[i].second;
        if (z.size() <= 1) {
            app.cert.kind = LimitOneCertificate::Kind::singleton;
        } else {
            check(disjoint(z, y_sep), "leaf overflow: surviving leaf touches Y");
            check(is_subset(z, set_intersect(nc, x_mod)), "leaf overflow: interface outside X");
            app.cert.kind = LimitOneCertificate::Kind::separator_interface;
        }
        app.cert.interface = z;
        return app;
    }
    throw invariant_violation("leaf overflow: threshold exceeded but every leaf excluded");
}

// ---- bare path extraction --------------------------------------------------------

using BarePathOrEvent = std::variant<BlockPath, ReductionEvent>;

// Bare-path search: either short-circuit
// into a reduction (leaf overflow, or a Y vertex dense enough to build a big
// biconnected subgraph), or peel branching nodes (D1), leaf blocks of the
// remainder (D2), and Y-touching blocks (D3) and return the largest
// surviving path.
inline BarePathOrEvent find_bare_path(ProblemInstance& pi, const VertexSet& x_mod,
                                      const VertexSet& y_sep, const VertexSet& c,
                                      const BlockCutTree& bct, std::uint64_t k, Trace& trace) {
    require(k > 0, "find_bare_path: k must be positive");
    require(pbound(BigUint(static_cast<std::uint64_t>(pi.t)), BigUint(x_mod.size()),
                   BigUint(set_intersect(pi.graph.neighborhood(c), y_sep).size()),
                   BigUint(k)) < BigUint(bct.blocks.size()),
            "find_bare_path: block count at or below Pbound");
    if (auto leaf = detect_leaf_overflow(pi, x_mod, y_sep, c, bct)) {
        ReductionEvent ev = apply_contract_leaf_block(pi, x_mod, y_sep, c, bct, leaf->block,
                                                      leaf->articulation, leaf->cert);
        trace.push_back(ev);
        return ev;
    }
    VertexSet ny = set_intersect(pi.graph.neighborhood(c), y_sep);
    for (Vertex y : ny) {
        VertexSet hits = set_intersect(pi.graph.neighbors(y), c);
        if (hits.size() > 1988 * x_mod.size()) {
            // Spanning tree of the component, pruned of leaves away from y,
            // plus y itself: a big biconnected induced subgraph of G - X.
            Graph comp = pi.graph.induced(c);
            EdgeSet tree = spanning_tree(comp);
            Graph tg;
            for (Vertex v : c) tg.add_vertex(v);
            for (const Edge& e : tree) tg.add_edge(e.first, e.second);
            bool pruned = true;
            while (pruned) {
                pruned = false;
                for (Vertex v : tg.vertices())
                    if (tg.degree(v) <= 1 && !hits.count(v)) {
                        tg.remove_vertex(v);
                        pruned = true;
                    }
            }
            VertexSet big = tg.vertices();
            big.insert(y);
            ReductionEvent ev = reduce_biconnected(pi, x_mod, big, trace);
            return ev;
        }
    }

    // Mixed node ids: blocks first, then articulations.
    int nb = static_cast<int>(bct.blocks.size());
    std::map<Vertex, int> art_id;
    int next = nb;
    for (Vertex a : bct.articulations) art_id[a] = next++;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(next));
    for (const auto& [a, b] : bct.tree_edges) {
        adj[static_cast<std::size_t>(art_id[a])].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(art_id[a]);
    }
    std::size_t leaves = 0;
    for (int v = 0; v < next; ++v) leaves += adj[static_cast<std::size_t>(v)].size() <= 1;

    std::vector<char> dropped(static_cast<std::size_t>(next), 0);
    std::size_t d1 = 0;
    for (int v = 0; v < next; ++v)
        if (adj[static_cast<std::size_t>(v)].size() >= 3) {
            dropped[static_cast<std::size_t>(v)] = 1;
            ++d1;
        }
    check(leaves < 2 || d1 + 2 <= leaves, "D1 bound |D1| <= m-2");

    auto comps_of = [&]() {
        std::vector<std::vector<int>> comps;
        std::vector<char> seen(static_cast<std::size_t>(next), 0);
        for (int s = 0; s < next; ++s) {
            if (dropped[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
            std::vector<int> comp{s};
            seen[static_cast<std::size_t>(s)] = 1;
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (int w : adj[static_cast<std::size_t>(comp[i])])
                    if (!dropped[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                        seen[static_cast<std::size_t>(w)] = 1;
                        comp.push_back(w);
                    }
            comps.push_back(std::move(comp));
        }
        return comps;
    };
    check(comps_of().size() <= 2 * d1 + 1, "D1 bound |C(T-D1)| <= 2|D1|+1");

    // D2: leaf blocks of T - D1.
    for (int v = 0; v < nb; ++v) {
        if (dropped[static_cast<std::size_t>(v)]) continue;
        std::size_t live = 0;
        for (int w : adj[static_cast<std::size_t>(v)])
            live += dropped[static_cast<std::size_t>(w)] ? 0 : 1;
        if (live <= 1) dropped[static_cast<std::size_t>(v)] = 1;
    }
    // D3: blocks with Y-neighbours.
    for (int v = 0; v < nb; ++v) {
        if (dropped[static_cast<std::size_t>(v)]) continue;
        if (!disjoint(pi.graph.neighborhood(bct.blocks[static_cast<std::size_t>(v)]), y_sep))
            dropped[static_cast<std::size_t>(v)] = 1;
    }

    std::vector<std::vector<int>> comps = comps_of();
    const std::vector<int>* best = nullptr;
    std::size_t best_blocks = 0;
    Vertex best_lead = 0;
    for (const auto& comp : comps) {
        std::size_t nblocks = 0;
        Vertex lead = ~0u;
        for (int v : comp)
            if (v < nb) {
                ++nblocks;
                lead = std::min(lead, *bct.blocks[static_cast<std::size_t>(v)].begin());
            }
        if (nblocks > best_blocks || (nblocks == best_blocks && best && lead < best_lead)) {
            best = &comp;
            best_blocks = nblocks;
            best_lead = lead;
        }
    }
    check(best != nullptr && best_blocks >= k, "bare path: survivor below k blocks");

    // Order the linear survivor; endpoints must be articulations.
    std::set<int> in_comp(best->begin(), best->end());
    std::vector<int> ends;
    for (int v : *best) {
        std::size_t live = 0;
        for (int w : adj[static_cast<std::size_t>(v)]) live += in_comp.count(w) ? 1 : 0;
        check(live <= 2, "bare path: survivor not linear");
        if (live <= 1) ends.push_back(v);
    }
    check(ends.size() == 2 && ends[0] >= nb && ends[1] >= nb,
          "bare path: endpoints must be articulations");
    int start = std::min(ends[0], ends[1]);
    std::vector<int> ordered{start};
    std::set<int> seen{start};
    while (ordered.size() < best->size()) {
        bool advanced = false;
        for (int w : adj[static_cast<std::size_t>(ordered.back())])
            if (in_comp.count(w) && !seen.count(w)) {
                ordered.push_back(w);
                seen.insert(w);
                advanced = true;
                break;
            }
        check(advanced, "bare path: ordering stuck");
    }

    BlockPath bp;
    std::map<int, Vertex> art_back;
    for (const auto& [a, id] : art_id) art_back[id] = a;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (i % 2 == 0) {
            check(ordered[i] >= nb, "bare path: alternation broken");
            bp.arts.push_back(art_back[ordered[i]]);
        } else {
            check(ordered[i] < nb, "bare path: alternation broken");
            bp.blocks.push_back(ordered[i]);
        }
    }
    check(bp.arts.size() == bp.blocks.size() + 1, "bare path: shape");

    // Boundary postcondition of the bare path, checked directly.
    VertexSet span;
    for (int b : bp.blocks)
        span.insert(bct.blocks[static_cast<std::size_t>(b)].begin(),
                    bct.blocks[static_cast<std::size_t>(b)].end());
    VertexSet ends_set{bp.arts.front(), bp.arts.back()};
    VertexSet outside = pi.graph.neighborhood(set_minus(span, ends_set));
    check(is_subset(outside, set_union(ends_set, x_mod)), "bare path: boundary leak");
    return bp;
}

// ---- routing a path through block chains -----------------------------------------

// Simple path from a1 through u to a2 inside one biconnected block, via the
// auxiliary-vertex flow construction.
inline Path single_step_single_path(const Graph& block, Vertex a1, Vertex a2, Vertex u) {
    require(block.has_vertex(a1) && block.has_vertex(a2) && block.has_vertex(u),
            "single-step: vertices outside block");
    require(a1 != a2, "single-step: equal articulations");
    if (u == a1 || u == a2) return shortest_path(block, a1, a2);
    Graph aug = block;
    Vertex aux = aug.add_vertex();
    aug.add_edge(aux, a1);
    aug.add_edge(aux, a2);
    std::vector<Path> paths = max_disjoint_paths(aug, u, aux);
    check(paths.size() >= 2, "single-step: block not biconnected around u");
    Path via_a1, via_a2;
    for (const Path& p : paths) {
        Vertex penultimate = p[p.size() - 2];
        if (penultimate == a1) via_a1 = p;
        if (penultimate == a2) via_a2 = p;
    }
    check(!via_a1.empty() && !via_a2.empty(), "single-step: paths miss articulations");
    Path out(via_a1.rbegin() + 1, via_a1.rend());  // a1 ... u
    out.insert(out.end(), via_a2.begin() + 1, via_a2.end() - 1);  // ... a2
    check(is_simple_path(block, out) && out.front() == a1 && out.back() == a2,
          "single-step: assembled path broken");
    return out;
}

// Simple path along a block path visiting a target vertex in every second
// U-meeting block (odd positions in path order).
inline Path path_through_neighbours(const Graph& comp, const BlockCutTree& bct,
                                    const BlockPath& bp, const VertexSet& u_set) {
    std::vector<std::size_t> meets;
    for (std::size_t i = 0; i < bp.blocks.size(); ++i)
        if (!disjoint(bct.blocks[static_cast<std::size_t>(bp.blocks[i])], u_set)) meets.push_back(i);
    std::set<std::size_t> kept;
    for (std::size_t i = 0; i < meets.size(); i += 2) kept.insert(meets[i]);

    Path out{bp.arts[0]};
    for (std::size_t i = 0; i < bp.blocks.size(); ++i) {
        const VertexSet& bset = bct.blocks[static_cast<std::size_t>(bp.blocks[i])];
        Graph bg = comp.induced(bset);
        Path leg;
        if (kept.count(i)) {
            Vertex target = *set_intersect(bset, u_set).begin();
            leg = single_step_single_path(bg, bp.arts[i], bp.arts[i + 1], target);
        } else {
            leg = shortest_path(bg, bp.arts[i], bp.arts[i + 1]);
        }
        out.insert(out.end(), leg.begin() + 1, leg.end());
    }
    check(is_simple_path(comp, out), "block path routing: not simple");
    std::size_t visited = 0;
    for (Vertex v : out) visited += u_set.count(v) ? 1 : 0;
    check(2 * visited >= meets.size(), "block path routing: too few target hits");
    return out;
}

// ---- the combined block-cut-tree step ------------------------------------------------

// With more than Pbound blocks, one of the
// four rules fires on the component.
inline ReductionEvent reduce_blockcut(ProblemInstance& pi, const VertexSet& x_mod,
                                      const VertexSet& y_sep, const VertexSet& c, Trace& trace) {
    require(plausibly_nontrivial(pi), "reduce_blockcut: trivial instance");
    Graph comp = pi.graph.induced(c);
    require(is_connected(comp), "reduce_blockcut: component not connected");
    BlockCutTree bct = block_cut_tree(comp);
    VertexSet ny = set_intersect(pi.graph.neighborhood(c), y_sep);
    std::uint64_t k = 30 * static_cast<std::uint64_t>(x_mod.size()) + 3;
    require(pbound(BigUint(static_cast<std::uint64_t>(pi.t)), BigUint(x_mod.size()),
                   BigUint(ny.size()), BigUint(k)) < BigUint(bct.blocks.size()),
            "reduce_blockcut: block count at or below Pbound");

    BarePathOrEvent r = find_bare_path(pi, x_mod, y_sep, c, bct, k, trace);
    if (std::holds_alternative<ReductionEvent>(r)) return std::get<ReductionEvent>(r);
    const BlockPath& bp = std::get<BlockPath>(r);

    for (Vertex x : x_mod) {
        std::vector<std::size_t> rx;
        for (std::size_t i = 0; i < bp.blocks.size(); ++i) {
            const VertexSet& bset = bct.blocks[static_cast<std::size_t>(bp.blocks[i])];
            if (!disjoint(pi.graph.neighbors(x), bset)) rx.push_back(i);
        }
        if (rx.size() < 11) continue;

        Path q = path_through_neighbours(comp, bct, bp, set_intersect(pi.graph.neighbors(x), c));
        std::vector<Vertex> hits;
        for (Vertex v : q)
            if (pi.graph.has_edge(v, x)) hits.push_back(v);
        check(hits.size() >= 6, "reduce_blockcut: six x-neighbours expected on the path");
        VertexSet arts_on_path(bp.arts.begin(), bp.arts.end());
        check(arts_on_path.count(hits[1]) && arts_on_path.count(hits[4]),
              "reduce_blockcut: x-path separators not articulations");

        VertexSet cut = set_union(x_mod, VertexSet{hits[1], hits[4]});
        VertexSet stretch;
        for (const VertexSet& cc : components(pi.graph.minus(cut)))
            if (cc.count(hits[2])) stretch = cc;
        check(!stretch.empty(), "reduce_blockcut: stretch vanished");
        check(disjoint(stretch, y_sep), "reduce_blockcut: stretch touches Y");
        LimitOneCertificate cert;
        cert.interface = set_intersect(pi.graph.neighborhood(stretch), x_mod);
        cert.kind = cert.interface.size() <= 1 ? LimitOneCertificate::Kind::singleton
                                               : LimitOneCertificate::Kind::separator_interface;
        check(is_subset(cert.interface, set_intersect(pi.graph.neighborhood(c), x_mod)),
              "reduce_blockcut: interface outside the component neighbourhood");
        ReductionEvent ev = apply_frequent_path_neighbour(
            pi, x_mod, x, q, {hits[1], hits[2], hits[3], hits[4]}, cert);
        trace.push_back(ev);
        return ev;
    }

    // No frequent modulator vertex: three consecutive untouched blocks exist.
    std::set<std::size_t> touched;
    for (Vertex x : x_mod)
        for (std::size_t i = 0; i < bp.blocks.size(); ++i)
            if (!disjoint(pi.graph.neighbors(x),
                          bct.blocks[static_cast<std::size_t>(bp.blocks[i])]))
                touched.insert(i);
    for (std::size_t i = 0; i + 2 < bp.blocks.size(); ++i) {
        if (touched.count(i) || touched.count(i + 1) || touched.count(i + 2)) continue;
        ReductionEvent ev = apply_contract_neighbourless(pi, x_mod, bct, bp, i);
        trace.push_back(ev);
        return ev;
    }
    throw invariant_violation("reduce_blockcut: no rule applied despite Pbound excess");
}

}  // namespace tw2k
