// tw2k: kernelization driver for treewidth-2 vertex deletion instances.
//
// Exit codes: 0 ok, 1 usage, 2 parse error, 3 invariant failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tw2k/gen.hpp"
#include "tw2k/io.hpp"
#include "tw2k/kernelize.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

tw2k::Rational parse_ratio(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return tw2k::Rational(std::stoull(s), 1);
    return tw2k::Rational(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
}

tw2k::Trace parse_trace(const std::string& text) {
    tw2k::Trace trace;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw tw2k::parse_error(line_no, "bad trace json");
        tw2k::ReductionEvent ev;
        ev.rule = j.at("rule").get<std::string>();
        for (const auto& v : j.at("removed_vertices"))
            ev.removed_vertices.push_back(v.get<tw2k::Vertex>());
        for (const auto& e : j.at("removed_edges"))
            ev.removed_edges.push_back(tw2k::make_edge(e.at(0).get<tw2k::Vertex>(),
                                                       e.at(1).get<tw2k::Vertex>()));
        for (const auto& e : j.at("added_edges"))
            ev.added_edges.push_back(tw2k::make_edge(e.at(0).get<tw2k::Vertex>(),
                                                     e.at(1).get<tw2k::Vertex>()));
        ev.t_delta = j.at("t_delta").get<int>();
        trace.push_back(std::move(ev));
    }
    return trace;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"treewidth-2 vertex deletion kernelization"};
    app.require_subcommand(1);

    std::string input, output, trace_path, epsilon = "1", approximator = "exact";
    std::uint64_t seed = 0;
    std::size_t max_oracle_n = 16;
    std::size_t gen_n = 10, gen_core = 0;
    std::uint32_t gen_density = 400;
    int gen_t = 1;

    CLI::App* cmd_kernelize = app.add_subcommand("kernelize", "reduce an instance");
    cmd_kernelize->add_option("--input", input)->required();
    cmd_kernelize->add_option("--output", output)->required();
    cmd_kernelize->add_option("--trace", trace_path);
    cmd_kernelize->add_option("--epsilon", epsilon, "approximation ratio p/q (default 1)");
    cmd_kernelize->add_option("--approximator", approximator)
        ->check(CLI::IsMember({"exact", "greedy"}));

    CLI::App* cmd_verify = app.add_subcommand("verify", "replay a trace and check equivalence");
    cmd_verify->add_option("--input", input)->required();
    cmd_verify->add_option("--trace", trace_path)->required();
    cmd_verify->add_option("--output", output)->required();
    cmd_verify->add_option("--max-oracle-n", max_oracle_n);

    CLI::App* cmd_solve = app.add_subcommand("solve", "run the brute-force oracle");
    cmd_solve->add_option("--input", input)->required();
    cmd_solve->add_option("--max-oracle-n", max_oracle_n);

    CLI::App* cmd_gen = app.add_subcommand("gen", "emit a seeded random instance");
    cmd_gen->add_option("--output", output)->required();
    cmd_gen->add_option("--n", gen_n);
    cmd_gen->add_option("--density", gen_density, "edge probability in permille");
    cmd_gen->add_option("--t", gen_t);
    cmd_gen->add_option("--seed", seed);
    cmd_gen->add_option("--planted-core", gen_core, "plant a width-2 core of this size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_kernelize->parsed()) {
            tw2k::ProblemInstance pi = tw2k::parse_instance(read_file(input));
            tw2k::Approximator approx = approximator == "exact" ? tw2k::exact_approximator()
                                                                : tw2k::greedy_approximator();
            tw2k::Rational eps = parse_ratio(epsilon);
            tw2k::KernelReport report = tw2k::kernelize(std::move(pi), approx, eps);
            write_file(output, tw2k::serialize_instance(report.final));
            if (!trace_path.empty()) write_file(trace_path, tw2k::serialize_trace(report.trace));
            std::cout << "s kernelized n=" << report.final.graph.vertex_count()
                      << " t=" << report.final.t << " rules=" << report.trace.size()
                      << " bound=" << report.bound_value.to_decimal() << "\n";
        } else if (cmd_verify->parsed()) {
            tw2k::ProblemInstance pi = tw2k::parse_instance(read_file(input));
            tw2k::ProblemInstance claimed = tw2k::parse_instance(read_file(output));
            if (pi.graph.vertex_count() > max_oracle_n) {
                std::cout << "error scale input-above-max-oracle-n\n";
                return 1;
            }
            tw2k::Trace trace = parse_trace(read_file(trace_path));
            tw2k::ProblemInstance replayed;
            try {
                replayed = tw2k::replay_all(pi, trace);
            } catch (const std::exception& e) {
                std::cout << "error invariant trace-replay-failed: " << e.what() << "\n";
                return 3;
            }
            if (tw2k::serialize_instance(replayed) != tw2k::serialize_instance(claimed)) {
                std::cout << "error invariant trace-replay-mismatch\n";
                return 3;
            }
            if (!tw2k::oracle_equivalent(pi, replayed)) {
                std::cout << "error invariant answer-not-preserved\n";
                return 3;
            }
            std::cout << "s verified events=" << trace.size() << "\n";
        } else if (cmd_solve->parsed()) {
            tw2k::ProblemInstance pi = tw2k::parse_instance(read_file(input));
            if (pi.graph.vertex_count() > max_oracle_n) {
                std::cout << "error scale input-above-max-oracle-n\n";
                return 1;
            }
            auto r = tw2k::oracle::exact_tw2d(pi.graph, pi.graph.vertex_count());
            std::cout << "s minimum " << r->minimum << "\n";
            std::cout << "s answer " << (r->minimum <= static_cast<std::size_t>(pi.t) ? "yes" : "no")
                      << "\n";
            std::cout << "s solution";
            for (tw2k::Vertex v : r->one_solution) std::cout << " " << v;
            std::cout << "\n";
        } else if (cmd_gen->parsed()) {
            tw2k::ProblemInstance pi =
                tw2k::gen_instance(seed, gen_n, gen_density, gen_t, gen_core);
            write_file(output, tw2k::serialize_instance(pi));
            std::cout << "s generated n=" << pi.graph.vertex_count()
                      << " m=" << pi.graph.edge_count() << "\n";
        }
    } catch (const tw2k::parse_error& e) {
        std::cout << "error parse " << e.what() << "\n";
        return 2;
    } catch (const tw2k::invariant_violation& e) {
        std::cout << "error invariant " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cout << "error usage " << e.what() << "\n";
        return 1;
    }
    return 0;
}
