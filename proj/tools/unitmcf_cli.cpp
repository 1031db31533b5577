// unitmcf: unit-capacity min-cost circulation / s-t flow solver.
//
// Exit codes: 0 success, 1 infeasible (or failed verification), 2 parse or
// input rejection, 3 internal invariant violation.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcf/dimacs.hpp"
#include "mcf/generate.hpp"
#include "mcf/oracle.hpp"
#include "mcf/planar/planar_refine.hpp"
#include "mcf/planar/rdivision.hpp"
#include "mcf/solver.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mcf::parse_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mcf::error("cannot write file: " + path);
    out << text;
}

mcf::Algo parse_algo(const std::string& name) {
    if (name == "general") return mcf::Algo::general;
    if (name == "dial") return mcf::Algo::dial;
    if (name == "planar") return mcf::Algo::planar;
    throw mcf::parse_error("unknown algorithm: " + name);
}

std::string solution_text(const mcf::Solution& sol, const mcf::MultiGraph& g,
                          const std::string& format) {
    if (format == "json") return mcf::serialize_solution(sol);
    std::ostringstream out;  // dimacs-style summary
    out << "s " << sol.cost << '\n';
    for (mcf::EdgeId o = 0; o < g.num_original(); ++o)
        if (sol.flow[static_cast<size_t>(o)])
            out << "f " << g.tail(2 * o) + 1 << ' ' << g.head(2 * o) + 1 << ' '
                << g.cost(2 * o) << '\n';
    return out.str();
}

void dump_trace(const mcf::Solution& sol, const std::string& path) {
    if (path.empty()) return;
    std::ostringstream out;
    for (const auto& rec : sol.phase_trace) {
        json j;
        j["schema"] = "unitmcf-trace-v1";
        j["scale"] = rec.scale;
        j["phase"] = rec.phase;
        j["eps"] = rec.eps;
        j["delta"] = rec.delta;
        j["psi_before"] = rec.psi_before;
        j["psi_after"] = rec.psi_after;
        j["paths"] = rec.paths;
        j["path_edges"] = rec.path_edges;
        out << j.dump() << '\n';
    }
    write_file(path, out.str());
}

mcf::SolveOptions base_options(const std::string& algo, int r, bool heavy,
                               const mcf::Instance& inst) {
    mcf::SolveOptions opt;
    opt.algo = parse_algo(algo);
    opt.planar_r = r;
    opt.heavy_checks = heavy;
    opt.trace_phases = true;
    if (opt.algo == mcf::Algo::planar && !inst.rotation.empty())
        opt.rotation = &inst.rotation;
    return opt;
}

json run_report(const std::string& instance, const std::string& algo,
                const mcf::MultiGraph& g, const mcf::Solution& sol, bool timing,
                double wall_ms) {
    json j;
    j["schema"] = "unitmcf-report-v1";
    j["instance"] = instance;
    j["algo"] = algo;
    j["n"] = g.num_vertices();
    j["m"] = g.num_original();
    j["cost"] = sol.cost;
    j["certified"] = sol.certified;
    j["scales"] = sol.scales.size();
    std::int64_t phases = 0, paths = 0, edges = 0;
    int max_phases = 0;
    for (const auto& s : sol.scales) {
        phases += s.phases;
        paths += s.paths;
        edges += s.path_edges;
        max_phases = std::max(max_phases, s.phases);
    }
    j["phases"] = phases;
    j["max_phases_per_scale"] = max_phases;
    j["paths"] = paths;
    j["path_edges"] = edges;
    json per_scale = json::array();
    for (const auto& s : sol.scales)
        per_scale.push_back({{"eps", s.eps},
                             {"phases", s.phases},
                             {"paths", s.paths},
                             {"path_edges", s.path_edges}});
    j["per_scale"] = per_scale;
    if (timing) j["wall_ms"] = wall_ms;
    return j;
}

int cmd_solve(const std::string& input, const std::string& algo, int r,
              const std::string& format, const std::string& output,
              const std::string& trace, bool certify_flag, bool heavy,
              bool division_report) {
    mcf::Instance inst = mcf::parse_instance(read_file(input));
    mcf::SolveOptions opt = base_options(algo, r, heavy, inst);
    if (division_report && opt.algo == mcf::Algo::planar) {
        int rr = r > 0 ? r
                       : mcf::planar::default_piece_size(inst.graph.num_vertices(),
                                                         inst.graph.num_original());
        mcf::planar::RDivision div =
            mcf::planar::build_r_division(inst.graph, rr, opt.rotation);
        std::cerr << mcf::planar::validate_r_division(inst.graph, div) << '\n';
    }
    mcf::Solution sol = mcf::min_cost_circulation(inst.graph, opt);
    if (certify_flag) {
        std::string why;
        if (!mcf::certify(sol, inst.graph, &why)) {
            std::cerr << "certificate rejected: " << why << '\n';
            return 3;
        }
    }
    dump_trace(sol, trace);
    write_file(output, solution_text(sol, inst.graph, format));
    return 0;
}

int cmd_flow(const std::string& input, const std::string& algo, int r,
             const std::string& format, const std::string& output, const std::string& trace,
             bool certify_flag, bool heavy, int source, int sink, std::int64_t value) {
    mcf::Instance inst = mcf::parse_instance(read_file(input));
    int n = inst.graph.num_vertices();
    if (source < 1 || source > n || sink < 1 || sink > n)
        throw mcf::parse_error("terminal out of range");
    // The residual reduction keeps the support graph (one direction of every
    // edge pair stays residual), so a provided embedding remains valid.
    mcf::SolveOptions opt = base_options(algo, r, heavy, inst);
    mcf::Solution sol =
        mcf::min_cost_st_flow(inst.graph, source - 1, sink - 1, value, opt);
    if (!sol.feasible) {
        std::cerr << "infeasible: no s-t flow of value " << value << '\n';
        return 1;
    }
    if (certify_flag) {
        std::string why;
        if (!mcf::certify(sol, inst.graph, &why)) {
            std::cerr << "certificate rejected: " << why << '\n';
            return 3;
        }
    }
    dump_trace(sol, trace);
    write_file(output, solution_text(sol, inst.graph, format));
    return 0;
}

int cmd_gen(const std::string& kind, int rows, int cols, int n, std::int64_t m,
            std::int64_t cmin, std::int64_t cmax, int mult, std::uint64_t seed,
            const std::string& output) {
    mcf::InstanceSpec spec;
    if (kind == "grid") spec.kind = mcf::GenKind::grid;
    else if (kind == "tri") spec.kind = mcf::GenKind::triangulation;
    else if (kind == "random") spec.kind = mcf::GenKind::random_multigraph;
    else throw mcf::parse_error("unknown generator kind: " + kind);
    spec.rows = rows;
    spec.cols = cols;
    spec.n = n;
    spec.m = m;
    spec.cost_min = cmin;
    spec.cost_max = cmax;
    spec.multiplicity = mult;
    spec.seed = seed;
    mcf::Instance inst = mcf::generate(spec);
    write_file(output, mcf::serialize_instance(inst));
    return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path) {
    mcf::Instance inst = mcf::parse_instance(read_file(instance_path));
    mcf::Solution sol = mcf::parse_solution(read_file(solution_path));
    std::string why;
    if (!mcf::certify(sol, inst.graph, &why)) {
        std::cerr << "verification failed: " << why << '\n';
        return 1;
    }
    std::cout << "verified: cost " << sol.cost << '\n';
    return 0;
}

int cmd_bench(const std::vector<std::string>& inputs, const std::string& algos_csv,
              int r, bool timing, bool heavy) {
    std::vector<std::string> files;
    for (const auto& in : inputs) {
        namespace fs = std::filesystem;
        if (fs::is_directory(in)) {
            std::vector<std::string> dir_files;
            for (const auto& entry : fs::directory_iterator(in))
                if (entry.is_regular_file()) dir_files.push_back(entry.path().string());
            std::sort(dir_files.begin(), dir_files.end());
            files.insert(files.end(), dir_files.begin(), dir_files.end());
        } else {
            files.push_back(in);
        }
    }
    std::vector<std::string> algos;
    {
        std::stringstream ss(algos_csv);
        for (std::string a; std::getline(ss, a, ',');) algos.push_back(a);
    }
    for (const auto& file : files) {
        mcf::Instance inst = mcf::parse_instance(read_file(file));
        std::int64_t first_cost = 0;
        bool have_first = false;
        for (const auto& algo : algos) {
            mcf::SolveOptions opt = base_options(algo, r, heavy, inst);
            opt.trace_phases = false;
            auto t0 = std::chrono::steady_clock::now();
            mcf::Solution sol = mcf::min_cost_circulation(inst.graph, opt);
            auto t1 = std::chrono::steady_clock::now();
            double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            if (have_first) {
                MCF_CHECK(sol.cost == first_cost, "algorithms disagree on the optimal cost");
            } else {
                first_cost = sol.cost;
                have_first = true;
            }
            std::cout << run_report(file, algo, inst.graph, sol, timing, ms).dump() << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unit-capacity min-cost circulation / flow solver"};
    app.require_subcommand(1);
    bool heavy = [] {
        const char* env = std::getenv("UNITMCF_CHECKS");
        return env && std::string(env) != "0";
    }();

    std::string input = "-", output = "-", format = "json", algo = "dial", trace;
    int r = 0;
    bool certify_flag = false;
    bool division_report = false;

    auto* solve = app.add_subcommand("solve", "min-cost circulation of an instance");
    solve->add_option("input", input, "instance file (- for stdin)");
    solve->add_option("--algo", algo, "general|dial|planar");
    solve->add_option("--r", r, "piece size for the planar engine");
    solve->add_option("--format", format, "json|dimacs output format");
    solve->add_option("--output", output, "output file (- for stdout)");
    solve->add_option("--trace", trace, "write per-phase trace records to a file");
    solve->add_flag("--certify", certify_flag, "re-verify the certificate before printing");
    solve->add_flag("--division-report", division_report,
                    "print the r-division validation report to stderr (planar only)");

    int source = 0, sink = 0;
    std::int64_t value = 0;
    auto* flow = app.add_subcommand("flow", "min-cost s-t flow of a given value");
    flow->add_option("input", input, "instance file (- for stdin)");
    flow->add_option("--source", source, "source vertex (1-based)")->required();
    flow->add_option("--sink", sink, "sink vertex (1-based)")->required();
    flow->add_option("--value", value, "flow value")->required();
    flow->add_option("--algo", algo, "general|dial|planar");
    flow->add_option("--r", r, "piece size for the planar engine");
    flow->add_option("--format", format, "json|dimacs output format");
    flow->add_option("--output", output, "output file (- for stdout)");
    flow->add_option("--trace", trace, "write per-phase trace records to a file");
    flow->add_flag("--certify", certify_flag, "re-verify the certificate before printing");

    std::string kind = "random";
    int rows = 0, cols = 0, n = 0, mult = 1;
    std::int64_t m = 0, cmin = -10, cmax = 10;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    gen->add_option("--kind", kind, "grid|tri|random");
    gen->add_option("--rows", rows, "grid rows");
    gen->add_option("--cols", cols, "grid cols");
    gen->add_option("--n", n, "vertex count (tri/random)");
    gen->add_option("--m", m, "edge count (random)");
    gen->add_option("--cmin", cmin, "minimum cost");
    gen->add_option("--cmax", cmax, "maximum cost");
    gen->add_option("--mult", mult, "parallel copies per support adjacency");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--output", output, "output file (- for stdout)");

    std::string instance_path, solution_path;
    auto* verify = app.add_subcommand("verify", "check a solution file against an instance");
    verify->add_option("instance", instance_path, "instance file")->required();
    verify->add_option("solution", solution_path, "solution JSON file")->required();

    std::vector<std::string> bench_inputs;
    std::string algos_csv = "general,dial";
    bool timing = false;
    auto* bench = app.add_subcommand("bench", "solve instances and emit report lines");
    bench->add_option("inputs", bench_inputs, "instance files or directories")->required();
    bench->add_option("--algos", algos_csv, "comma-separated list: general,dial,planar");
    bench->add_option("--r", r, "piece size for the planar engine");
    bench->add_flag("--timing", timing, "include wall-clock fields (breaks determinism)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return cmd_solve(input, algo, r, format, output, trace, certify_flag, heavy,
                             division_report);
        if (flow->parsed())
            return cmd_flow(input, algo, r, format, output, trace, certify_flag, heavy, source,
                            sink, value);
        if (gen->parsed())
            return cmd_gen(kind, rows, cols, n, m, cmin, cmax, mult, seed, output);
        if (verify->parsed()) return cmd_verify(instance_path, solution_path);
        if (bench->parsed()) return cmd_bench(bench_inputs, algos_csv, r, timing, heavy);
    } catch (const mcf::parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const mcf::planar::nonplanar_error& e) {
        std::cerr << "rejected: " << e.what() << '\n';
        return 2;
    } catch (const mcf::invariant_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const mcf::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
