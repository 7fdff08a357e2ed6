#pragma once

#include "tw2k/blockcut_reduce.hpp"
#include "tw2k/decompose.hpp"

namespace tw2k {

struct KernelReport {
    ProblemInstance final;
    Trace trace;
    std::size_t outer_iterations = 0;
    BigUint bound_value;  // bound(t_final, eps)
};

// The kernelization driver. While the graph is larger than bound(t, eps):
// exhaust the trivial rules; otherwise decompose (modulator, separator) and
// fire the block-cut-tree branch or the biconnected branch on the largest
// component, until the vertex count drops. Every loop pass shrinks (|V|,|E|)
// lexicographically.
inline KernelReport kernelize(ProblemInstance pi, const Approximator& approx,
                              const Rational& eps) {
    require(eps.ge_one(), "kernelize: ratio below one");
    KernelReport report;
    ProblemInstance original = pi;

    while (true) {
        BigUint cap = bound(static_cast<std::uint64_t>(pi.t), eps);
        if (BigUint(pi.graph.vertex_count()) <= cap) break;
        ++report.outer_iterations;
        std::size_t v0 = pi.graph.vertex_count();
        std::size_t e0 = pi.graph.edge_count();

        if (classify_trivial(pi).reason != TrivialReason::none) {
            reduce_trivial(pi, report.trace);
        } else {
            auto x = get_linked_tidy_modulator(pi, approx, report.trace);
            while (x) {
                if (pi.graph.vertex_count() < v0) break;
                if (classify_trivial(pi).reason != TrivialReason::none) {
                    reduce_trivial(pi, report.trace);
                    break;
                }
                if (!is_tidy_modulator(pi.graph, *x) || !is_linked_set(pi.graph, pi.t, *x))
                    break;
                auto y = get_separator(pi, *x, report.trace);
                if (!y) break;

                std::vector<VertexSet> comps =
                    components(pi.graph.minus(set_union(*x, *y)));
                check(!comps.empty(), "kernelize: nothing outside the decomposition");
                const VertexSet* largest = &comps.front();
                for (const VertexSet& c : comps)
                    if (c.size() > largest->size()) largest = &c;

                Graph comp_graph = pi.graph.induced(*largest);
                BlockCutTree bct = block_cut_tree(comp_graph);
                std::uint64_t k = 30 * static_cast<std::uint64_t>(x->size()) + 3;
                BigUint pcap = pbound(BigUint(static_cast<std::uint64_t>(pi.t)),
                                      BigUint(x->size()), BigUint(4), BigUint(k));
                if (pcap < BigUint(bct.blocks.size())) {
                    reduce_blockcut(pi, *x, *y, *largest, report.trace);
                } else {
                    const VertexSet* big = &bct.blocks.front();
                    for (const VertexSet& b : bct.blocks)
                        if (b.size() > big->size()) big = &b;
                    check(big->size() >= 1988 * x->size() + 2,
                          "kernelize: largest block below the biconnected threshold");
                    reduce_biconnected(pi, *x, *big, report.trace);
                }
            }
        }

        bool shrunk = pi.graph.vertex_count() < v0 ||
                      (pi.graph.vertex_count() == v0 && pi.graph.edge_count() < e0);
        check(shrunk, "kernelize: pass made no progress");
    }

    report.bound_value = bound(static_cast<std::uint64_t>(pi.t), eps);
    check(BigUint(pi.graph.vertex_count()) <= report.bound_value,
          "kernelize: final size above bound");
    check(replay_all(original, report.trace) == pi, "kernelize: trace does not replay");
    report.final = std::move(pi);
    return report;
}

}  // namespace tw2k
