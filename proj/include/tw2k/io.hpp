#pragma once

#include <map>
#include <sstream>
#include <string>

#include "tw2k/instance.hpp"

namespace tw2k {

struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Instance files: comment lines start with "c ", one header
// "p tw2d <n> <m> <t>", then edges "e <u> <v>" with 1 <= u < v <= n.
inline ProblemInstance parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool seen_header = false;
    long n = 0, m = 0, t = 0, edges_seen = 0;
    ProblemInstance pi;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            if (seen_header) throw parse_error(line_no, "duplicate header");
            std::string fmt;
            if (!(ls >> fmt >> n >> m >> t) || fmt != "tw2d")
                throw parse_error(line_no, "malformed header");
            if (n < 0 || m < 0 || t < 0) throw parse_error(line_no, "negative header field");
            seen_header = true;
            for (long v = 1; v <= n; ++v) pi.graph.add_vertex(static_cast<Vertex>(v));
            pi.t = static_cast<int>(t);
        } else if (tag == "e") {
            if (!seen_header) throw parse_error(line_no, "edge before header");
            long u = 0, v = 0;
            if (!(ls >> u >> v)) throw parse_error(line_no, "malformed edge");
            if (u < 1 || v <= u || v > n) throw parse_error(line_no, "edge endpoints out of range");
            if (pi.graph.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
                throw parse_error(line_no, "duplicate edge");
            pi.graph.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
            ++edges_seen;
        } else {
            throw parse_error(line_no, "unknown line tag");
        }
    }
    if (!seen_header) throw parse_error(line_no, "missing header");
    if (edges_seen != m) throw parse_error(line_no, "edge count does not match header");
    return pi;
}

// Serialization compacts surviving ids onto 1..n in order and emits sorted
// edges, so parse-serialize is a normal form.
inline std::string serialize_instance(const ProblemInstance& pi) {
    std::map<Vertex, long> compact;
    long next = 1;
    for (Vertex v : pi.graph.vertices()) compact[v] = next++;
    std::ostringstream out;
    out << "p tw2d " << pi.graph.vertex_count() << " " << pi.graph.edge_count() << " " << pi.t
        << "\n";
    for (const Edge& e : pi.graph.edges()) {
        long a = compact[e.first], b = compact[e.second];
        if (a > b) std::swap(a, b);
        out << "e " << a << " " << b << "\n";
    }
    return out.str();
}

// Traces: one JSON object per line with the fixed key order
// rule, removed_vertices, removed_edges, added_edges, t_delta.
inline std::string serialize_trace(const Trace& trace) {
    std::ostringstream out;
    auto edges = [&](const std::vector<Edge>& es) {
        std::string s = "[";
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (i) s += ",";
            s += "[" + std::to_string(es[i].first) + "," + std::to_string(es[i].second) + "]";
        }
        return s + "]";
    };
    for (const ReductionEvent& ev : trace) {
        out << "{\"rule\":\"" << ev.rule << "\",\"removed_vertices\":[";
        for (std::size_t i = 0; i < ev.removed_vertices.size(); ++i) {
            if (i) out << ",";
            out << ev.removed_vertices[i];
        }
        out << "],\"removed_edges\":" << edges(ev.removed_edges)
            << ",\"added_edges\":" << edges(ev.added_edges) << ",\"t_delta\":" << ev.t_delta
            << "}\n";
    }
    return out.str();
}

}  // namespace tw2k
