#include "doctest.h"
#include "test_util.hpp"
#include "tw2k/blockcut_reduce.hpp"
#include "tw2k/oracle.hpp"

using namespace tw2k;
using namespace testutil;

namespace {

// Diamond (K4 minus an edge) caterpillar: articulations a_0..a_k joined by
// diamonds; interiors have degree three inside their block.
struct Caterpillar {
    Graph g;
    std::vector<Vertex> arts;
};

Caterpillar diamond_caterpillar(std::size_t k) {
    Caterpillar c;
    c.arts.push_back(c.g.add_vertex());
    for (std::size_t i = 0; i < k; ++i) {
        Vertex u = c.g.add_vertex(), v = c.g.add_vertex(), nxt = c.g.add_vertex();
        Vertex prev = c.arts.back();
        c.g.add_edge(prev, u);
        c.g.add_edge(prev, v);
        c.g.add_edge(u, v);
        c.g.add_edge(u, nxt);
        c.g.add_edge(v, nxt);
        c.arts.push_back(nxt);
    }
    return c;
}

// Adds the two-vertex clique gadget that pins the instance above width 2
// while keeping {x1, x2} tidy.
void add_k4_gadget(Graph& g, Vertex x1, Vertex x2) {
    Vertex h1 = g.add_vertex(), h2 = g.add_vertex();
    g.add_edge(h1, h2);
    g.add_edge(x1, h1);
    g.add_edge(x1, h2);
    g.add_edge(x2, h1);
    g.add_edge(x2, h2);
}

}  // namespace

TEST_CASE("contract leaf block, oracle-checked") {
    // triangle leaf {1,2,3} hanging at articulation 1, chain 1-4-5, helper x=6
    Graph g = make_graph(5, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {4, 5}});
    g.add_vertex(6);
    g.add_edge(6, 2);
    ProblemInstance pi{g, 1};
    ProblemInstance before = pi;
    VertexSet comp = set_minus(g.vertices(), VertexSet{6});
    BlockCutTree bct = block_cut_tree(pi.graph.induced(comp));
    int leaf = -1;
    for (int b = 0; b < static_cast<int>(bct.blocks.size()); ++b)
        if (bct.blocks[static_cast<std::size_t>(b)] == VertexSet({1, 2, 3})) leaf = b;
    REQUIRE(leaf >= 0);
    LimitOneCertificate cert;
    cert.kind = LimitOneCertificate::Kind::singleton;
    cert.interface = {6};
    ReductionEvent ev = apply_contract_leaf_block(pi, {6}, {}, comp, bct, leaf, 1, cert);
    CHECK(ev.rule == "contract-leaf-block");
    CHECK(pi.graph.vertex_count() == 4);
    CHECK(oracle_equivalent(before, pi));
    CHECK(replay_all(before, {ev}) == pi);
}

TEST_CASE("contract leaf block rejections") {
    // x adjacent to two corners: B + x + ax is a K4, width check fails
    Graph g = make_graph(5, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {4, 5}});
    g.add_vertex(6);
    g.add_edge(6, 2);
    g.add_edge(6, 3);
    ProblemInstance pi{g, 1};
    VertexSet comp = set_minus(g.vertices(), VertexSet{6});
    BlockCutTree bct = block_cut_tree(pi.graph.induced(comp));
    int leaf = -1;
    for (int b = 0; b < static_cast<int>(bct.blocks.size()); ++b)
        if (bct.blocks[static_cast<std::size_t>(b)] == VertexSet({1, 2, 3})) leaf = b;
    REQUIRE(leaf >= 0);
    LimitOneCertificate cert;
    cert.kind = LimitOneCertificate::Kind::singleton;
    cert.interface = {6};
    CHECK_THROWS_AS(apply_contract_leaf_block(pi, {6}, {}, comp, bct, leaf, 1, cert),
                    rejected_application);

    // an interface meeting Y cannot ride the separator certificate
    Graph g2 = make_graph(5, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {4, 5}});
    g2.add_vertex(6);
    g2.add_vertex(7);
    g2.add_edge(6, 2);
    g2.add_edge(7, 3);
    ProblemInstance pi2{g2, 1};
    VertexSet comp2 = set_minus(g2.vertices(), VertexSet{6, 7});
    BlockCutTree bct2 = block_cut_tree(pi2.graph.induced(comp2));
    int leaf2 = -1;
    for (int b = 0; b < static_cast<int>(bct2.blocks.size()); ++b)
        if (bct2.blocks[static_cast<std::size_t>(b)] == VertexSet({1, 2, 3})) leaf2 = b;
    REQUIRE(leaf2 >= 0);
    LimitOneCertificate sep;
    sep.kind = LimitOneCertificate::Kind::separator_interface;
    sep.interface = {6, 7};
    CHECK_THROWS_AS(apply_contract_leaf_block(pi2, {6}, {7}, comp2, bct2, leaf2, 1, sep),
                    rejected_application);
}

TEST_CASE("detect_leaf_overflow on a star of pendant blocks") {
    // hub 1 with three triangle blocks, helper x=8 adjacent to one corner
    // of each; X = {8}, so Lbound(t,1,0) = 1 < 3 leaves
    Graph g;
    for (Vertex v = 1; v <= 7; ++v) g.add_vertex(v);
    g.add_vertex(8);
    for (int i = 0; i < 3; ++i) {
        Vertex u = static_cast<Vertex>(2 + 2 * i), w = static_cast<Vertex>(3 + 2 * i);
        g.add_edge(1, u);
        g.add_edge(1, w);
        g.add_edge(u, w);
        g.add_edge(8, u);
    }
    ProblemInstance pi{g, 1};
    ProblemInstance before = pi;
    VertexSet comp = set_minus(g.vertices(), VertexSet{8});
    BlockCutTree bct = block_cut_tree(pi.graph.induced(comp));
    REQUIRE(bct.blocks.size() == 3);
    auto app = detect_leaf_overflow(pi, {8}, {}, comp, bct);
    REQUIRE(app.has_value());
    ReductionEvent ev = apply_contract_leaf_block(pi, {8}, {}, comp, bct, app->block,
                                                  app->articulation, app->cert);
    CHECK(pi.graph.vertex_count() == before.graph.vertex_count() - 2);
    CHECK(oracle_equivalent(before, pi));

    // with |X| = 2 the same tree sits at the bound: no application
    ProblemInstance pi2{g, 1};
    Graph g2 = g;
    // two leaves only
    Graph twog;
    for (Vertex v = 1; v <= 5; ++v) twog.add_vertex(v);
    twog.add_vertex(8);
    twog.add_vertex(9);
    for (int i = 0; i < 2; ++i) {
        Vertex u = static_cast<Vertex>(2 + 2 * i), w = static_cast<Vertex>(3 + 2 * i);
        twog.add_edge(1, u);
        twog.add_edge(1, w);
        twog.add_edge(u, w);
        twog.add_edge(8, u);
        twog.add_edge(9, w);
    }
    ProblemInstance pi3{twog, 1};
    VertexSet comp3 = set_minus(twog.vertices(), VertexSet{8, 9});
    BlockCutTree bct3 = block_cut_tree(pi3.graph.induced(comp3));
    CHECK(!detect_leaf_overflow(pi3, {8, 9}, {}, comp3, bct3).has_value());
}

TEST_CASE("find_bare_path on a caterpillar") {
    Caterpillar cat = diamond_caterpillar(8);
    Graph g = cat.g;
    Vertex x1 = g.add_vertex(), x2 = g.add_vertex();
    g.add_edge(x1, x2);
    g.add_edge(x1, cat.arts.front());
    g.add_edge(x2, cat.arts.back());
    add_k4_gadget(g, x1, x2);
    ProblemInstance pi{g, 1};
    VertexSet comp = cat.g.vertices();
    BlockCutTree bct = block_cut_tree(pi.graph.induced(comp));
    REQUIRE(bct.blocks.size() == 8);

    Trace tr;
    BarePathOrEvent r = find_bare_path(pi, {x1, x2}, {}, comp, bct, 3, tr);
    REQUIRE(std::holds_alternative<BlockPath>(r));
    const BlockPath& bp = std::get<BlockPath>(r);
    CHECK(bp.blocks.size() >= 3);
    CHECK(bp.arts.size() == bp.blocks.size() + 1);
    // boundary: interiors see only the path ends and X
    VertexSet span;
    for (int b : bp.blocks)
        span.insert(bct.blocks[static_cast<std::size_t>(b)].begin(),
                    bct.blocks[static_cast<std::size_t>(b)].end());
    VertexSet outside =
        pi.graph.neighborhood(set_minus(span, VertexSet{bp.arts.front(), bp.arts.back()}));
    CHECK(is_subset(outside, VertexSet{bp.arts.front(), bp.arts.back(), x1, x2}));
}

TEST_CASE("find_bare_path refuses block counts at or below Pbound") {
    Caterpillar cat = diamond_caterpillar(4);
    Graph g = cat.g;
    Vertex x1 = g.add_vertex(), x2 = g.add_vertex();
    g.add_edge(x1, x2);
    g.add_edge(x1, cat.arts.front());
    g.add_edge(x2, cat.arts.back());
    add_k4_gadget(g, x1, x2);
    ProblemInstance pi{g, 1};
    BlockCutTree bct = block_cut_tree(pi.graph.induced(cat.g.vertices()));
    Trace tr;
    // Pbound(1,2,0,3) = 5 and the tree has only 4 blocks
    CHECK_THROWS_AS(find_bare_path(pi, {x1, x2}, {}, cat.g.vertices(), bct, 3, tr),
                    precondition_error);
}

TEST_CASE("path_through_neighbours") {
    // single-edge blocks: the chain itself
    Graph chain = path_graph(6);
    BlockCutTree bct = block_cut_tree(chain);
    BlockPath bp;
    for (Vertex v = 2; v <= 5; ++v) bp.arts.push_back(v);
    for (int b = 0; b < static_cast<int>(bct.blocks.size()); ++b)
        if (*bct.blocks[static_cast<std::size_t>(b)].begin() >= 2 &&
            *bct.blocks[static_cast<std::size_t>(b)].rbegin() <= 5)
            bp.blocks.push_back(b);
    REQUIRE(bp.blocks.size() == 3);
    Path q = path_through_neighbours(chain, bct, bp, {});
    CHECK(q == Path({2, 3, 4, 5}));

    // triangle blocks with one target each: every second block visited
    Caterpillar cat = diamond_caterpillar(5);
    BlockCutTree cbct = block_cut_tree(cat.g);
    BlockPath cbp;
    cbp.arts = cat.arts;
    for (std::size_t i = 0; i < 5; ++i) {
        // block containing both arts[i] and arts[i+1]
        for (int b = 0; b < static_cast<int>(cbct.blocks.size()); ++b)
            if (cbct.blocks[static_cast<std::size_t>(b)].count(cat.arts[i]) &&
                cbct.blocks[static_cast<std::size_t>(b)].count(cat.arts[i + 1]))
                cbp.blocks.push_back(b);
    }
    REQUIRE(cbp.blocks.size() == 5);
    VertexSet targets;
    for (int b : cbp.blocks) {
        VertexSet inner = set_minus(cbct.blocks[static_cast<std::size_t>(b)],
                                    VertexSet(cat.arts.begin(), cat.arts.end()));
        targets.insert(*inner.begin());  // one diamond interior per block
    }
    Path q2 = path_through_neighbours(cat.g, cbct, cbp, targets);
    std::size_t visited = 0;
    for (Vertex v : q2) visited += targets.count(v) ? 1 : 0;
    CHECK(visited >= 3);  // ceil(5/2)
    CHECK(is_simple_path(cat.g, q2));
    CHECK(q2.front() == cat.arts.front());
    CHECK(q2.back() == cat.arts.back());
}

TEST_CASE("single_step_single_path inside one block") {
    Graph tri = complete_graph(3);
    Path p = single_step_single_path(tri, 1, 3, 2);
    CHECK(p == Path({1, 2, 3}));
    Graph edge = make_graph(2, {{1, 2}});
    CHECK(single_step_single_path(edge, 1, 2, 1) == Path({1, 2}));
    // diamond: a1=1, a2=4, through either interior
    Graph dia = make_graph(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
    Path d = single_step_single_path(dia, 1, 4, 3);
    CHECK(d.front() == 1);
    CHECK(d.back() == 4);
    CHECK(std::count(d.begin(), d.end(), 3) == 1);
    CHECK(is_simple_path(dia, d));
}

TEST_CASE("contract neighbourless blocks, oracle-checked") {
    // three diamonds plus the K4 gadget: 14 vertices
    Caterpillar cat = diamond_caterpillar(3);
    Graph g = cat.g;
    Vertex x1 = g.add_vertex(), x2 = g.add_vertex();
    g.add_edge(x1, x2);
    g.add_edge(x1, cat.arts.front());
    g.add_edge(x2, cat.arts.back());
    add_k4_gadget(g, x1, x2);
    REQUIRE(g.vertex_count() == 14);
    ProblemInstance pi{g, 1};
    ProblemInstance before = pi;
    REQUIRE(plausibly_nontrivial(pi));
    REQUIRE(is_tidy_modulator(pi.graph, {x1, x2}));

    BlockCutTree bct = block_cut_tree(pi.graph.induced(cat.g.vertices()));
    BlockPath bp;
    bp.arts = cat.arts;
    for (std::size_t i = 0; i < 3; ++i)
        for (int b = 0; b < static_cast<int>(bct.blocks.size()); ++b)
            if (bct.blocks[static_cast<std::size_t>(b)].count(cat.arts[i]) &&
                bct.blocks[static_cast<std::size_t>(b)].count(cat.arts[i + 1]))
                bp.blocks.push_back(b);
    REQUIRE(bp.blocks.size() == 3);

    ReductionEvent ev = apply_contract_neighbourless(pi, {x1, x2}, bct, bp, 0);
    CHECK(ev.rule == "contract-neighbourless-blocks");
    CHECK(pi.graph.vertex_count() == before.graph.vertex_count() - 3);
    CHECK(oracle_equivalent(before, pi));
    CHECK(replay_all(before, {ev}) == pi);

    // rejection: outside contact on an interior
    ProblemInstance pi2{before.graph, 1};
    pi2.graph.add_vertex(99);
    pi2.graph.add_edge(99, *set_minus(bct.blocks[1], VertexSet(cat.arts.begin(),
                                                               cat.arts.end()))
                                .begin());
    CHECK_THROWS_AS(apply_contract_neighbourless(pi2, {x1, x2}, bct, bp, 0),
                    rejected_application);
}

TEST_CASE("reduce_blockcut: long bare caterpillar contracts three in a row") {
    Caterpillar cat = diamond_caterpillar(70);
    Graph g = cat.g;
    Vertex x1 = g.add_vertex(), x2 = g.add_vertex();
    g.add_edge(x1, x2);
    g.add_edge(x1, cat.arts.front());
    g.add_edge(x2, cat.arts.back());
    add_k4_gadget(g, x1, x2);
    ProblemInstance pi{g, 1};
    REQUIRE(plausibly_nontrivial(pi));
    REQUIRE(is_tidy_modulator(pi.graph, {x1, x2}));

    ProblemInstance before = pi;
    Trace tr;
    ReductionEvent ev = reduce_blockcut(pi, {x1, x2}, {}, cat.g.vertices(), tr);
    CHECK(ev.rule == "contract-neighbourless-blocks");
    CHECK(pi.graph.vertex_count() == before.graph.vertex_count() - 3);
    CHECK(replay_all(before, tr) == pi);
}

TEST_CASE("reduce_blockcut: frequent modulator vertex on an edge-block path") {
    // path of 67 vertices; x1 fans the odd positions, x2 the even ones
    Graph g;
    Vertex x1 = g.add_vertex(), x2 = g.add_vertex();
    g.add_edge(x1, x2);
    std::vector<Vertex> path;
    for (int i = 0; i < 67; ++i) {
        Vertex v = g.add_vertex();
        if (i) g.add_edge(path.back(), v);
        g.add_edge(i % 2 ? x2 : x1, v);
        path.push_back(v);
    }
    g.add_edge(x2, path.front());
    g.add_edge(x2, path.back());  // index 66 is x1-fanned already
    add_k4_gadget(g, x1, x2);
    ProblemInstance pi{g, 1};
    REQUIRE(plausibly_nontrivial(pi));
    REQUIRE(is_tidy_modulator(pi.graph, {x1, x2}));
    REQUIRE(is_linked_set(pi.graph, pi.t, {x1, x2}));

    ProblemInstance before = pi;
    Trace tr;
    VertexSet comp(path.begin(), path.end());
    ReductionEvent ev = reduce_blockcut(pi, {x1, x2}, {}, comp, tr);
    CHECK(ev.rule == "frequent-path-neighbour");
    REQUIRE(ev.removed_edges.size() == 1);
    Edge e = ev.removed_edges[0];
    CHECK((e.first == x1 || e.second == x1));
    CHECK(pi.graph.edge_count() == before.graph.edge_count() - 1);
    CHECK(replay_all(before, tr) == pi);
}

TEST_CASE("x-path-separator: middle neighbour plus apex cuts the path") {
    // In a width-2 graph, any simple path avoiding x that visits three of
    // x's neighbours in order is cut between the outer two by {middle, x}.
    Rng rng(95);
    int done = 0;
    while (done < 40) {
        Graph g = gen_partial_two_tree(rng, 5 + rng.below(8), 900);
        VertexSet base = g.vertices();
        Vertex apex = g.add_vertex();
        for (Vertex v : base)
            if (rng.chance_permille(450)) g.add_edge(apex, v);
        if (!tw_le2(g)) continue;
        if (g.degree(apex) < 3) continue;
        // hunt for a simple path through three apex neighbours
        VertexSet nbs = g.neighbors(apex);
        Graph rest = g.minus(apex);
        bool found = false;
        for (Vertex s : nbs) {
            if (found) break;
            std::vector<Path> stack{{s}};
            while (!stack.empty() && !found) {
                Path cur = stack.back();
                stack.pop_back();
                std::size_t hits = 0;
                for (Vertex v : cur) hits += nbs.count(v) ? 1 : 0;
                if (hits >= 3) {
                    std::vector<Vertex> h;
                    for (Vertex v : cur)
                        if (nbs.count(v)) h.push_back(v);
                    Graph cut = g.minus(VertexSet{h[1], apex});
                    for (const VertexSet& c : components(cut))
                        CHECK(!(c.count(h[0]) && c.count(h[2])));
                    found = true;
                    break;
                }
                if (cur.size() > 9) continue;
                for (Vertex nx : rest.neighbors(cur.back()))
                    if (std::find(cur.begin(), cur.end(), nx) == cur.end()) {
                        Path ext = cur;
                        ext.push_back(nx);
                        stack.push_back(ext);
                    }
            }
        }
        if (found) ++done;
    }
}

TEST_CASE("reduce_blockcut refuses below Pbound") {
    Caterpillar cat = diamond_caterpillar(5);
    Graph g = cat.g;
    Vertex x1 = g.add_vertex(), x2 = g.add_vertex();
    g.add_edge(x1, x2);
    g.add_edge(x1, cat.arts.front());
    g.add_edge(x2, cat.arts.back());
    add_k4_gadget(g, x1, x2);
    ProblemInstance pi{g, 1};
    Trace tr;
    CHECK_THROWS_AS(reduce_blockcut(pi, {x1, x2}, {}, cat.g.vertices(), tr),
                    precondition_error);
}
