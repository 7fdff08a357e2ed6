#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "tw2k/graph.hpp"

namespace tw2k {

// Block-cut tree of a connected graph: blocks are maximal biconnected
// subgraphs stored as vertex sets, articulations are the cut vertices, and
// the bipartite tree joins an articulation to every block that contains it.
struct BlockCutTree {
    std::vector<VertexSet> blocks;                 // ordered by smallest contained vertex
    VertexSet articulations;
    std::vector<std::pair<Vertex, int>> tree_edges;  // (articulation, block index)

    bool is_articulation(Vertex v) const { return articulations.count(v) > 0; }

    std::vector<int> blocks_of(Vertex a) const {
        std::vector<int> out;
        for (const auto& [art, b] : tree_edges)
            if (art == a) out.push_back(b);
        return out;
    }
};

inline bool is_biconnected(const Graph& g);

// Iterative lowpoint algorithm; recursion is avoided because components can
// reach a few thousand vertices.
inline BlockCutTree block_cut_tree(const Graph& g) {
    require(g.vertex_count() > 0, "block_cut_tree: empty graph");
    require(is_connected(g), "block_cut_tree: disconnected graph");

    std::map<Vertex, int> num, low;
    std::map<Vertex, Vertex> parent;
    std::vector<Edge> edge_stack;
    std::vector<VertexSet> blocks;
    VertexSet articulations;

    struct Frame {
        Vertex v;
        std::vector<Vertex> nbs;
        std::size_t next = 0;
    };

    int counter = 0;
    Vertex root = *g.vertices().begin();
    std::vector<Frame> stack;
    auto open = [&](Vertex v) {
        num[v] = low[v] = counter++;
        Frame f;
        f.v = v;
        f.nbs.assign(g.neighbors(v).begin(), g.neighbors(v).end());
        stack.push_back(std::move(f));
    };
    auto pop_block = [&](const Edge& until) {
        VertexSet blk;
        while (true) {
            Edge e = edge_stack.back();
            edge_stack.pop_back();
            blk.insert(e.first);
            blk.insert(e.second);
            if (e == until) break;
        }
        blocks.push_back(std::move(blk));
    };

    open(root);
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.nbs.size()) {
            Vertex w = f.nbs[f.next++];
            if (!num.count(w)) {
                parent[w] = f.v;
                edge_stack.push_back(make_edge(f.v, w));
                open(w);
            } else {
                bool is_parent_edge = parent.count(f.v) && parent[f.v] == w;
                if (!is_parent_edge && num[w] < num[f.v]) {
                    edge_stack.push_back(make_edge(f.v, w));
                    low[f.v] = std::min(low[f.v], num[w]);
                }
            }
        } else {
            Vertex v = f.v;
            stack.pop_back();
            if (!stack.empty()) {
                Frame& pf = stack.back();
                low[pf.v] = std::min(low[pf.v], low[v]);
                if (low[v] >= num[pf.v]) {
                    // pf.v closes a block; it is an articulation unless it is
                    // the root with a single child (handled after the loop).
                    pop_block(make_edge(pf.v, v));
                    bool is_root = !parent.count(pf.v);
                    if (!is_root) articulations.insert(pf.v);
                }
            }
        }
    }
    // Root is an articulation iff it has two or more DFS children; that is
    // equivalent to belonging to two or more blocks.
    if (g.vertex_count() == 1) blocks.push_back(VertexSet{root});
    int root_blocks = 0;
    for (const auto& b : blocks) root_blocks += b.count(root) ? 1 : 0;
    if (root_blocks >= 2) articulations.insert(root);

    std::sort(blocks.begin(), blocks.end(), [](const VertexSet& a, const VertexSet& b) {
        return *a.begin() < *b.begin();
    });

    BlockCutTree bct;
    bct.blocks = std::move(blocks);
    bct.articulations = std::move(articulations);
    for (int i = 0; i < static_cast<int>(bct.blocks.size()); ++i)
        for (Vertex a : bct.blocks[i])
            if (bct.articulations.count(a)) bct.tree_edges.push_back({a, i});

    // Structural laws; these run on every construction.
    for (std::size_t i = 0; i < bct.blocks.size(); ++i)
        for (std::size_t j = i + 1; j < bct.blocks.size(); ++j) {
            VertexSet shared = set_intersect(bct.blocks[i], bct.blocks[j]);
            check(shared.size() <= 1, "blocks share at most one vertex");
            if (shared.size() == 1)
                check(bct.articulations.count(*shared.begin()) > 0,
                      "shared block vertex is an articulation");
        }
    if (g.vertex_count() > 1)
        for (const auto& b : bct.blocks) check(b.size() >= 2, "block has >= 2 vertices");
    VertexSet covered;
    for (const auto& b : bct.blocks) covered.insert(b.begin(), b.end());
    check(covered == g.vertices(), "blocks cover the graph");
    // The bipartite graph is a tree: nodes = blocks + articulations.
    std::size_t tree_nodes = bct.blocks.size() + bct.articulations.size();
    check(bct.tree_edges.size() + 1 == tree_nodes || tree_nodes == 1,
          "block-cut graph is a tree");
    for (Vertex a : bct.articulations)
        check(bct.blocks_of(a).size() >= 2, "articulations are never leaves");
    return bct;
}

inline bool is_biconnected(const Graph& g) {
    if (g.vertex_count() == 0 || !is_connected(g)) return false;
    return block_cut_tree(g).blocks.size() == 1;
}

}  // namespace tw2k
