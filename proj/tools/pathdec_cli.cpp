// Command-line front end: solve / oracle / validate / gadget / bench.
// Exit codes: 0 solved or valid, 2 infeasible or invalid, 1 error.

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pathdec/gadget.hpp"
#include "pathdec/general_solver.hpp"
#include "pathdec/generic_solver.hpp"

namespace {

using namespace pathdec;

void emit_file(const std::string& path, const PathDecomposition& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_decomposition(out, p);
}

int report_solution(const std::optional<PathDecomposition>& p, const std::string& emit,
                    bool stats, const Graph& g) {
    if (!p) {
        std::cout << "infeasible\n";
        return 2;
    }
    std::cout << "length=" << p->length() << '\n';
    if (stats) {
        ComponentSplit split = classify_components(g);
        std::cout << "width=" << p->width() << " size=" << p->size() << '\n'
                  << "components big=" << split.big.size() << " isolated=" << split.isolated.size()
                  << " pairs=" << split.edge_pairs.size() << '\n';
        std::cout << "bag-sizes";
        for (const auto& b : p->bags) std::cout << ' ' << b.count();
        std::cout << '\n';
    }
    if (!emit.empty()) emit_file(emit, *p);
    return 0;
}

int cmd_solve(const std::string& graph_file, int k, const std::string& emit, bool stats) {
    Graph g = parse_graph_file(graph_file);
    return report_solution(solve(g, k), emit, stats, g);
}

int cmd_oracle(const std::string& graph_file, int k, int l1, int l2, const std::string& emit,
               bool stats) {
    Graph g = parse_graph_file(graph_file);
    return report_solution(solve_exact(g, k, l1, l2), emit, stats, g);
}

const char* axiom_tag(Axiom a) {
    switch (a) {
        case Axiom::vertices_covered: return "PD1";
        case Axiom::edges_covered: return "PD2";
        case Axiom::contiguity: return "PD3";
    }
    return "?";
}

const char* type_tag(DecompositionType t) {
    switch (t) {
        case DecompositionType::A: return "A";
        case DecompositionType::B1: return "B1";
        case DecompositionType::B2: return "B2";
        case DecompositionType::C: return "C";
    }
    return "?";
}

int cmd_validate(const std::string& graph_file, const std::string& dec_file, int k, int l1,
                 int l2) {
    Graph g = parse_graph_file(graph_file);
    std::ifstream in(dec_file);
    if (!in) throw std::runtime_error("cannot open " + dec_file);
    PathDecomposition p = parse_decomposition(in, g.num_vertices());

    if (auto v = validate(g, p)) {
        std::cout << "violation " << axiom_tag(v->axiom);
        if (v->axiom == Axiom::edges_covered)
            std::cout << " edge (" << v->edge.first << "," << v->edge.second << ")";
        else if (v->axiom == Axiom::vertices_covered)
            std::cout << " vertex " << v->vertex;
        else
            std::cout << " vertex " << v->vertex << " bag " << v->bag;
        std::cout << '\n';
        return 2;
    }
    bool capped = true;
    if (k >= 0 && p.width() > k) {
        std::cout << "violation cap width=" << p.width() << " k=" << k << '\n';
        capped = false;
    }
    if (l1 >= 0 && !p.bags.empty() && p.bags.front().count() > l1) {
        std::cout << "violation cap first-bag=" << p.bags.front().count() << " lambda1=" << l1
                  << '\n';
        capped = false;
    }
    if (l2 >= 0 && !p.bags.empty() && p.bags.back().count() > l2) {
        std::cout << "violation cap last-bag=" << p.bags.back().count() << " lambda2=" << l2
                  << '\n';
        capped = false;
    }
    if (!capped) return 2;
    std::cout << "ok width=" << p.width() << " length=" << p.length() << " size=" << p.size()
              << " type=" << type_tag(classify_type(p)) << '\n';
    return 0;
}

std::vector<std::vector<int>> parse_parts(const std::string& s) {
    // semicolon-separated triples of comma-separated 1-based weight numbers
    std::vector<std::vector<int>> parts;
    std::istringstream groups(s);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<int> part;
        std::istringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            int v = std::stoi(item);
            if (v < 1) throw std::runtime_error("weight numbers are 1-based");
            part.push_back(v - 1);
        }
        parts.push_back(part);
    }
    return parts;
}

void write_labels(const std::string& path, const GadgetGraph& gg) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    auto line = [&](const std::string& tag, const std::vector<int>& vs) {
        out << tag;
        for (int v : vs) out << ' ' << v;
        out << '\n';
    };
    for (size_t i = 0; i < gg.tri.size(); ++i)
        for (size_t q = 0; q < gg.tri[i].size(); ++q)
            line("K3 " + std::to_string(i + 1) + " " + std::to_string(q), gg.tri[i][q].members());
    for (size_t i = 0; i < gg.quad.size(); ++i)
        for (size_t q = 0; q < gg.quad[i].size(); ++q)
            line("K4 " + std::to_string(i + 1) + " " + std::to_string(q), gg.quad[i][q].members());
    for (size_t j = 0; j < gg.k5.size(); ++j)
        line("K5 " + std::to_string(j), gg.k5[j].members());
    for (size_t j = 0; j < gg.path.size(); ++j) line("path " + std::to_string(j), gg.path[j]);
}

int cmd_gadget_build(const std::vector<int>& weights, int b, const std::string& out_prefix) {
    GadgetGraph gg = build_gadget(ThreePartitionInstance{weights, b});
    std::ofstream out(out_prefix + ".el");
    if (!out) throw std::runtime_error("cannot write " + out_prefix + ".el");
    write_graph(out, gg.graph);
    write_labels(out_prefix + ".labels", gg);
    std::cout << "n=" << gg.graph.num_vertices() << " m=" << gg.graph.num_edges()
              << " l=" << gg.l << '\n';
    return 0;
}

int cmd_gadget_decompose(const std::vector<int>& weights, int b, const std::string& parts_arg,
                         const std::string& out_file) {
    GadgetGraph gg = build_gadget(ThreePartitionInstance{weights, b});
    PathDecomposition p = decomposition_from_partition(gg, parse_parts(parts_arg));
    emit_file(out_file, p);
    std::cout << "length=" << p.length() << " width=" << p.width() << '\n';
    return verify_gadget_properties(gg, p).ok() ? 0 : 2;
}

int cmd_gadget_extract(const std::vector<int>& weights, int b, const std::string& dec_file) {
    GadgetGraph gg = build_gadget(ThreePartitionInstance{weights, b});
    std::ifstream in(dec_file);
    if (!in) throw std::runtime_error("cannot open " + dec_file);
    PathDecomposition p = parse_decomposition(in, gg.graph.num_vertices());
    if (!verify_gadget_properties(gg, p).ok()) {
        std::cout << "invalid\n";
        return 2;
    }
    auto parts = extract_partition(gg, p);
    for (size_t j = 0; j < parts.size(); ++j) {
        for (size_t i = 0; i < parts[j].size(); ++i)
            std::cout << (i ? "," : "") << parts[j][i] + 1;
        std::cout << (j + 1 < parts.size() ? ";" : "\n");
    }
    return 0;
}

struct BenchRow {
    std::string instance;
    int k;
    std::string solver;
    std::string result;
    long long millis;
};

int cmd_bench(int k, unsigned seed, int max_n, int count, double p_edge, int jobs,
              bool feasible_only, bool no_timing, const std::string& out_file) {
    // instances are drawn up front from one stream so that --jobs cannot
    // change the corpus
    std::mt19937 rng(seed);
    std::vector<Graph> instances;
    std::vector<std::string> names;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    while (int(instances.size()) < count) {
        int n = 2 + int(rng() % 8);  // n in 2..9, oracle stays tractable
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng) < p_edge) edges.emplace_back(u, v);
        Graph g = Graph::from_edges(n, edges);
        if (feasible_only && !solve(g, k)) continue;  // rejection sampling
        names.push_back("er-n" + std::to_string(n) + "-s" + std::to_string(seed) + "-" +
                        std::to_string(instances.size()));
        instances.push_back(g);
    }

    std::vector<std::vector<BenchRow>> rows(instances.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < instances.size(); i = next.fetch_add(1)) {
            const Graph& g = instances[i];
            auto run = [&](const std::string& solver, auto&& fn) {
                auto t0 = std::chrono::steady_clock::now();
                std::optional<PathDecomposition> r = fn();
                auto t1 = std::chrono::steady_clock::now();
                long long ms =
                    std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
                rows[i].push_back({names[i], k, solver,
                                   r ? std::to_string(r->length()) : "infeasible",
                                   no_timing ? 0 : ms});
            };
            run("poly", [&] { return solve(g, k); });
            if (g.num_vertices() <= max_n) run("oracle", [&] { return solve_exact(g, k); });
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_file.empty()) {
        file.open(out_file);
        if (!file) throw std::runtime_error("cannot write " + out_file);
        out = &file;
    }
    int agree = 0, compared = 0;
    for (const auto& per_instance : rows) {
        std::string poly_result, oracle_result;
        for (const BenchRow& r : per_instance) {
            *out << r.instance << '\t' << r.k << "\t-\t-\t" << r.solver << '\t' << r.result
                 << '\t' << r.millis << '\n';
            (r.solver == "poly" ? poly_result : oracle_result) = r.result;
        }
        if (!oracle_result.empty()) {
            ++compared;
            agree += poly_result == oracle_result;
        }
    }
    std::cout << "instances=" << instances.size() << " compared=" << compared
              << " agree=" << agree << '\n';
    return agree == compared ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum-length path decompositions of bounded width"};
    app.require_subcommand(1);

    std::string graph_file, dec_file, emit, out_file, parts_arg, out_prefix = "gadget";
    std::vector<int> weights;
    int k = 3, b = 0, l1 = -1, l2 = -1;
    int max_n = 9, count = 50, jobs = 1;
    unsigned seed = 1;
    double p_edge = 0.3;
    bool stats = false, feasible_only = false, no_timing = false;

    auto* sc_solve = app.add_subcommand("solve", "minimum-length decomposition, width <= 3");
    sc_solve->add_option("graph", graph_file, "edge-list file")->required();
    sc_solve->add_option("--k", k, "width bound")->required()->check(CLI::Range(0, 3));
    sc_solve->add_option("--emit", emit, "write the decomposition here");
    sc_solve->add_flag("--stats", stats, "print width, size and component counts");

    auto* sc_oracle = app.add_subcommand("oracle", "exhaustive solver, any width");
    sc_oracle->add_option("graph", graph_file, "edge-list file")->required();
    sc_oracle->add_option("--k", k, "width bound")->required()->check(CLI::NonNegativeNumber);
    sc_oracle->add_option("--lambda1", l1, "first-bag cap (default k+1)");
    sc_oracle->add_option("--lambda2", l2, "last-bag cap (default k+1)");
    sc_oracle->add_option("--emit", emit, "write the decomposition here");
    sc_oracle->add_flag("--stats", stats, "print width, size and component counts");

    auto* sc_validate = app.add_subcommand("validate", "check a decomposition against a graph");
    sc_validate->add_option("graph", graph_file, "edge-list file")->required();
    sc_validate->add_option("decomposition", dec_file, "one bag per line")->required();
    int vk = -1;
    sc_validate->add_option("--k", vk, "also require width <= k");
    sc_validate->add_option("--lambda1", l1, "also cap the first bag");
    sc_validate->add_option("--lambda2", l2, "also cap the last bag");

    auto* sc_gadget = app.add_subcommand("gadget", "width-4 hardness construction");
    sc_gadget->require_subcommand(1);
    auto add_instance = [&](CLI::App* sc) {
        sc->add_option("--weights", weights, "3m positive weights")->required();
        sc->add_option("--b", b, "triple target sum")->required();
    };
    auto* sc_gbuild = sc_gadget->add_subcommand("build", "emit the gadget graph and labels");
    add_instance(sc_gbuild);
    sc_gbuild->add_option("--out", out_prefix, "output prefix (.el and .labels)");
    auto* sc_gdec = sc_gadget->add_subcommand("decompose", "decomposition from a partition");
    add_instance(sc_gdec);
    sc_gdec->add_option("--parts", parts_arg, "1-based triples, e.g. 1,2,6;3,4,5")->required();
    sc_gdec->add_option("--out", out_file, "decomposition file")->required();
    auto* sc_gext = sc_gadget->add_subcommand("extract", "partition from a decomposition");
    add_instance(sc_gext);
    sc_gext->add_option("decomposition", dec_file, "one bag per line")->required();

    auto* sc_bench = app.add_subcommand("bench", "random corpus, poly vs oracle");
    sc_bench->add_option("--k", k, "width bound")->required()->check(CLI::Range(0, 3));
    sc_bench->add_option("--seed", seed, "corpus seed");
    sc_bench->add_option("--max-n", max_n, "skip the oracle above this size");
    sc_bench->add_option("--count", count, "number of instances");
    sc_bench->add_option("--p", p_edge, "edge probability")->check(CLI::Range(0.0, 1.0));
    sc_bench->add_option("--jobs", jobs, "parallel solves")->check(CLI::PositiveNumber);
    sc_bench->add_flag("--feasible-only", feasible_only, "reject infeasible draws");
    sc_bench->add_flag("--no-timing", no_timing, "zero the millis column for diffable reports");
    sc_bench->add_option("--out", out_file, "report file (default stdout)");

    try {
        app.parse(argc, argv);
        if (sc_solve->parsed()) return cmd_solve(graph_file, k, emit, stats);
        if (sc_oracle->parsed()) return cmd_oracle(graph_file, k, l1, l2, emit, stats);
        if (sc_validate->parsed()) return cmd_validate(graph_file, dec_file, vk, l1, l2);
        if (sc_gadget->parsed()) {
            if (sc_gbuild->parsed()) return cmd_gadget_build(weights, b, out_prefix);
            if (sc_gdec->parsed()) return cmd_gadget_decompose(weights, b, parts_arg, out_file);
            return cmd_gadget_extract(weights, b, dec_file);
        }
        return cmd_bench(k, seed, max_n, count, p_edge, jobs, feasible_only, no_timing,
                         out_file);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help is not an error, everything else is
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
