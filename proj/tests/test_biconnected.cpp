#include "doctest.h"
#include "test_util.hpp"
#include "tw2k/biconnected_reduce.hpp"
#include "tw2k/oracle.hpp"

using namespace tw2k;
using namespace testutil;

namespace {

// Fan: apex `hub` over the path 1..n.
Graph fan_graph(std::size_t n, Vertex& hub_out) {
    Graph g = path_graph(n);
    Vertex hub = g.add_vertex();
    for (Vertex v = 1; v <= n; ++v) g.add_edge(hub, v);
    hub_out = hub;
    return g;
}

BiconnectedContext make_context(ProblemInstance& pi, const VertexSet& x, const VertexSet& bset) {
    BiconnectedContext ctx;
    ctx.pi = &pi;
    ctx.x = x;
    ctx.b = pi.graph.induced(bset);
    for (Vertex v : bset)
        for (Vertex w : pi.graph.neighbors(v))
            if (!bset.count(w)) ctx.boundary.insert(v);
    ctx.star = smooth(ctx.b, decompose_width2(ctx.b));
    ctx.adj = ctx.star.adjacency();
    return ctx;
}

// Orders the nodes of a linear decomposition tree from one endpoint.
std::vector<NodeId> linear_order(const TreeDecomposition& td) {
    auto adj = td.adjacency();
    std::vector<NodeId> ends;
    for (NodeId t = 0; t < td.node_count(); ++t)
        if (adj[t].size() <= 1) ends.push_back(t);
    REQUIRE(ends.size() == 2);
    std::vector<NodeId> out{std::min(ends[0], ends[1])};
    std::set<NodeId> seen{out[0]};
    while (out.size() < td.node_count()) {
        bool ok = false;
        for (NodeId w : adj[out.back()])
            if (!seen.count(w)) {
                out.push_back(w);
                seen.insert(w);
                ok = true;
                break;
            }
        REQUIRE(ok);
    }
    return out;
}

}  // namespace

TEST_CASE("frequent path neighbour on a fan, oracle-checked") {
    for (int t = 0; t <= 2; ++t) {
        Vertex hub;
        Graph g = fan_graph(8, hub);
        ProblemInstance pi{g, t};
        ProblemInstance before = pi;
        LimitOneCertificate cert;
        cert.kind = LimitOneCertificate::Kind::singleton;
        cert.interface = {hub};
        Path p{1, 2, 3, 4, 5, 6, 7, 8};
        ReductionEvent ev =
            apply_frequent_path_neighbour(pi, VertexSet{hub}, hub, p, {2, 4, 5, 7}, cert);
        CHECK(ev.removed_edges == std::vector<Edge>{make_edge(4, hub)});
        CHECK(!pi.graph.has_edge(4, hub));
        CHECK(oracle_equivalent(before, pi));
        ProblemInstance replayed = replay_all(before, {ev});
        CHECK(replayed == pi);
    }
}

TEST_CASE("frequent path neighbour rejections") {
    Vertex hub;
    Graph g = fan_graph(8, hub);
    ProblemInstance pi{g, 1};
    LimitOneCertificate cert;
    cert.kind = LimitOneCertificate::Kind::singleton;
    cert.interface = {hub};
    Path p{1, 2, 3, 4, 5, 6, 7, 8};

    // neighbours out of path order
    CHECK_THROWS_AS(
        apply_frequent_path_neighbour(pi, VertexSet{hub}, hub, p, {4, 2, 5, 7}, cert),
        rejected_application);
    // path through the modulator
    Path bad{1, 2, 3, 4, hub};
    CHECK_THROWS_AS(
        apply_frequent_path_neighbour(pi, VertexSet{hub}, hub, bad, {2, 3, 4, 4}, cert),
        rejected_application);
    // certificate names the wrong interface
    LimitOneCertificate wrong;
    wrong.kind = LimitOneCertificate::Kind::separator_interface;
    wrong.interface = {hub, 1};
    CHECK_THROWS_AS(
        apply_frequent_path_neighbour(pi, VertexSet{hub}, hub, p, {2, 4, 5, 7}, wrong),
        rejected_application);
}

TEST_CASE("ladder rule on a bare 2x9 grid, oracle-checked") {
    for (int t = 0; t <= 2; ++t) {
        Graph g = ladder_graph(9);
        ProblemInstance pi{g, t};
        ProblemInstance before = pi;
        Path p{1, 2, 3, 4, 5, 6, 7, 8, 9};
        Path q{10, 11, 12, 13, 14, 15, 16, 17, 18};
        std::vector<std::pair<std::size_t, std::size_t>> rungs;
        for (std::size_t i = 0; i < 9; ++i) rungs.push_back({i, i});
        ReductionEvent ev = apply_ladder(pi, p, q, rungs);
        CHECK(ev.removed_edges == std::vector<Edge>{make_edge(5, 14)});
        CHECK(oracle_equivalent(before, pi));
    }
}

TEST_CASE("ladder rule rejections") {
    Graph g = ladder_graph(9);
    Path p{1, 2, 3, 4, 5, 6, 7, 8, 9};
    Path q{10, 11, 12, 13, 14, 15, 16, 17, 18};
    std::vector<std::pair<std::size_t, std::size_t>> rungs;
    for (std::size_t i = 0; i < 9; ++i) rungs.push_back({i, i});

    // boundary leak: an interior rail vertex with an outside neighbour
    Graph leak = g;
    leak.add_vertex(19);
    leak.add_edge(5, 19);
    ProblemInstance pl{leak, 1};
    CHECK_THROWS_AS(apply_ladder(pl, p, q, rungs), rejected_application);

    // non-induced rail
    Graph chord = g;
    chord.add_edge(1, 3);
    ProblemInstance pc{chord, 1};
    CHECK_THROWS_AS(apply_ladder(pc, p, q, rungs), rejected_application);

    // too few rungs
    ProblemInstance pg{g, 1};
    std::vector<std::pair<std::size_t, std::size_t>> eight(rungs.begin(), rungs.end() - 1);
    CHECK_THROWS_AS(apply_ladder(pg, p, q, eight), rejected_application);

    // rungs out of order
    auto swapped = rungs;
    std::swap(swapped[2], swapped[3]);
    CHECK_THROWS_AS(apply_ladder(pg, p, q, swapped), rejected_application);
}

TEST_CASE("extract_parallel_paths base and ladder shapes") {
    // C5: three smooth nodes, P one vertex, Q an edge
    Graph c5 = cycle_graph(5);
    ProblemInstance pi{c5, 0};
    BiconnectedContext ctx = make_context(pi, {}, c5.vertices());
    REQUIRE(ctx.star.node_count() == 3);
    auto [p, q] = extract_parallel_paths(pi, {}, ctx.b, ctx.star, linear_order(ctx.star));
    CHECK(p.size() + q.size() == 3);
    CHECK(std::min(p.size(), q.size()) == 1);
    CHECK(std::max(p.size(), q.size()) == 2);

    // ladder: the two rails come back covering the interior bags
    Graph lad = ladder_graph(12);
    ProblemInstance pl{lad, 0};
    BiconnectedContext lctx = make_context(pl, {}, lad.vertices());
    std::vector<NodeId> order = linear_order(lctx.star);
    auto [lp, lq] = extract_parallel_paths(pl, {}, lctx.b, lctx.star, order);
    CHECK(is_induced_path(lctx.b, lp));
    CHECK(is_induced_path(lctx.b, lq));
    VertexSet covered(lp.begin(), lp.end());
    covered.insert(lq.begin(), lq.end());
    std::vector<NodeId> interior(order.begin() + 1, order.end() - 1);
    CHECK(covered == lctx.star.bag_union(interior));
}

TEST_CASE("wheel-like core: frequent vertex along a linear subtree") {
    // fan over a 40-path plus a pendant spectator off the hub
    Vertex hub;
    Graph g = fan_graph(40, hub);
    Vertex z1 = g.add_vertex();
    Vertex z2 = g.add_vertex();
    g.add_edge(hub, z1);
    g.add_edge(hub, z2);
    g.add_edge(z1, z2);
    ProblemInstance pi{g, 1};
    VertexSet fanset = set_union(path_graph(40).vertices(), VertexSet{hub});
    BiconnectedContext ctx = make_context(pi, {}, fanset);
    CHECK(ctx.boundary == VertexSet{hub});

    std::vector<NodeId> order = linear_order(ctx.star);
    std::vector<NodeId> hub_run;
    for (NodeId t : order)
        if (ctx.star.bags[t].count(hub)) hub_run.push_back(t);
    REQUIRE(hub_run.size() >= 16);
    // the run is contiguous in the order; feed it to the descent
    ProblemInstance before = pi;
    ReductionEvent ev = detail::reduce_frequent_vertex_path(ctx, hub_run, hub, {hub});
    REQUIRE(ev.removed_edges.size() == 1);
    CHECK((ev.removed_edges[0].first == hub || ev.removed_edges[0].second == hub));
    CHECK(pi.graph.edge_count() == before.graph.edge_count() - 1);
}

TEST_CASE("find_ladder_reduction fires the ladder on a big bare grid") {
    Graph lad = ladder_graph(45);
    ProblemInstance pi{lad, 1};
    BiconnectedContext ctx = make_context(pi, {}, lad.vertices());
    std::vector<NodeId> order = linear_order(ctx.star);
    REQUIRE(order.size() >= 86);
    ProblemInstance before = pi;
    ReductionEvent ev = detail::find_ladder_reduction(ctx, order);
    CHECK(ev.rule == "ladder");
    REQUIRE(ev.removed_edges.size() == 1);
    Edge e = ev.removed_edges[0];
    CHECK(before.graph.has_edge(e.first, e.second));
    // the removed edge is a rung: endpoints on opposite rails
    CHECK(((e.first <= 45) != (e.second <= 45)));
    CHECK(pi.graph.edge_count() == before.graph.edge_count() - 1);
}

TEST_CASE("extract_parallel_paths refuses outside-attached spans") {
    Graph c5 = cycle_graph(5);
    Graph g = c5;
    g.add_vertex(6);
    g.add_edge(6, 3);
    ProblemInstance pi{g, 0};
    TreeDecomposition star = smooth(c5, decompose_width2(c5));
    std::vector<NodeId> order;
    for (NodeId t = 0; t < star.node_count(); ++t) order.push_back(t);
    CHECK_THROWS_AS(extract_parallel_paths(pi, {}, c5, star, order), precondition_error);
}

TEST_CASE("reduce_biconnected preconditions") {
    Vertex hub;
    Graph g = fan_graph(8, hub);
    Vertex z = g.add_vertex();
    g.add_edge(hub, z);
    ProblemInstance pi{g, 1};
    Trace tr;
    // below the 1988|X|+2 threshold
    CHECK_THROWS_AS(reduce_biconnected(pi, {z}, set_minus(g.vertices(), VertexSet{z}), tr),
                    precondition_error);
}
