// gossip_sim: command-line front end for the discovery-process simulator.
//
//   gen      write a generated graph as an edge list
//   run      run one process to convergence on an edge-list graph
//   sweep    seeded Monte Carlo sweep over sizes, CSV output
//   analyze  scaling tables from sweep CSV, recurrence bound check
//   oracle   exact expected rounds, non-monotonicity search, MC comparison
//
// Exit codes: 0 success, 2 invalid input or constraint violation, 3 a sweep
// trial hit the round cap.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gossip/analysis.hpp"
#include "gossip/edge_list.hpp"
#include "gossip/generators.hpp"
#include "gossip/harness.hpp"
#include "gossip/oracle.hpp"
#include "gossip/process.hpp"

namespace {

using namespace gossip;

constexpr int kExitInvalid = 2;
constexpr int kExitCapped = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ProcessKind process_from(const std::string& name) {
    auto kind = parse_process_kind(name);
    if (!kind) throw UsageError("unknown process `" + name + "` (expected tri, twohop or dtwohop)");
    return *kind;
}

FamilySpec family_from(const std::string& name, double p, double clique_frac) {
    auto family = parse_family(name);
    if (!family) throw UsageError("unknown family `" + name + "`");
    return FamilySpec{*family, p, clique_frac};
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::string summary_path(const std::string& out) {
    const std::string suffix = ".csv";
    if (out.size() > suffix.size() && out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
        return out.substr(0, out.size() - suffix.size()) + ".summary.csv";
    return out + ".summary.csv";
}

struct GenArgs {
    std::string family;
    std::size_t n = 0;
    double p = 0.0;
    double clique_frac = 0.5;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    AnyGraph g = generate(family_from(a.family, a.p, a.clique_frac), a.n, a.seed);
    if (a.out.empty()) {
        write_edge_list(std::cout, g);
    } else {
        auto out = open_out(a.out);
        write_edge_list(out, g);
    }
    return 0;
}

struct RunArgs {
    std::string graph;
    std::string process;
    std::uint64_t seed = 0;
    std::uint64_t max_rounds = kDefaultMaxRounds;
    std::string trace;
    bool trace_ties = false;
    std::size_t trace_cut = 0;
};

int cmd_run(const RunArgs& a) {
    const ProcessKind kind = process_from(a.process);
    AnyGraph g = read_edge_list(std::filesystem::path(a.graph));
    ProcessConfig config{kind, a.seed, a.max_rounds};

    TraceOptions options;
    options.strong_ties = a.trace_ties;
    if (a.trace_cut > 0) options.cut_start = a.trace_cut;
    TraceCollector collector(options);
    RoundObserver* observer = a.trace.empty() ? nullptr : &collector;

    RunResult result = std::visit([&](auto& graph) { return run_to_convergence(graph, config, observer); }, g);
    if (!a.trace.empty()) {
        auto out = open_out(a.trace);
        out << traces_to_csv(collector.traces());
    }
    nlohmann::ordered_json j;
    j["rounds"] = result.rounds;
    j["capped"] = result.capped;
    j["final_edges"] = result.final_edges;
    std::cout << j.dump() << '\n';
    return 0;
}

struct SweepArgs {
    std::string family;
    std::string process;
    std::vector<std::size_t> sizes;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::uint64_t max_rounds = kDefaultMaxRounds;
    double p = 0.0;
    double clique_frac = 0.5;
    unsigned jobs = 0;
    bool serial = false;
    bool self_check = false;
    std::string out;
};

int cmd_sweep(const SweepArgs& a) {
    ExperimentSpec spec;
    spec.family = family_from(a.family, a.p, a.clique_frac);
    spec.sizes = a.sizes;
    spec.kind = process_from(a.process);
    spec.trials = a.trials;
    spec.master_seed = a.seed;
    spec.max_rounds = a.max_rounds;

    const unsigned jobs = a.jobs > 0 ? a.jobs : default_jobs();
    ExperimentResult result = a.serial ? run_sweep_serial(spec) : run_sweep(spec, jobs);

    {
        auto out = open_out(a.out);
        write_rows_csv(out, result.rows);
    }
    {
        auto out = open_out(summary_path(a.out));
        write_aggregates_csv(out, result.aggregates);
    }
    if (a.self_check) {
        std::ifstream in(a.out);
        auto reread = read_rows_csv(in);
        if (reread != result.rows || aggregate(reread) != result.aggregates) {
            std::cerr << "self-check failed: aggregates differ from recomputation\n";
            return 1;
        }
        std::cerr << "self-check ok\n";
    }
    if (result.any_capped()) {
        std::cerr << "warning: some trials hit the round cap\n";
        return kExitCapped;
    }
    return 0;
}

int cmd_scaling(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::vector<TrialRow> rows;
    try {
        rows = read_rows_csv(in);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    if (rows.empty()) throw UsageError("no rows in " + path);
    std::cout << scaling_to_json(analyze_scaling(rows)) << '\n';
    return 0;
}

struct PhArgs {
    std::size_t n = 100;
    double alpha = kDefaultAlpha;
    double eps = kDefaultEps;
    std::size_t max_h = 8;
    long rounds = -1;
};

int cmd_ph_bound(const PhArgs& a) {
    if (a.n < 4) throw UsageError("--n must be >= 4");
    if (a.max_h < 2) throw UsageError("--H must be >= 2");
    const double horizon = std::floor(a.eps * static_cast<double>(a.n) * static_cast<double>(a.n));
    const std::size_t rounds = a.rounds >= 0 ? static_cast<std::size_t>(a.rounds)
                                             : static_cast<std::size_t>(std::max(0.0, horizon));
    auto constants = check_ph_constants(a.alpha, a.eps);
    auto table = ph_recurrence(a.n, rounds, a.max_h, a.alpha, a.eps);
    const bool pass = ph_bound_check(table);

    nlohmann::ordered_json j;
    j["n"] = a.n;
    j["alpha"] = a.alpha;
    j["eps"] = a.eps;
    j["H"] = a.max_h;
    j["T"] = rounds;
    j["alpha_constraint"] = constants.alpha_ok;
    j["eps_constraint"] = constants.eps_ok;
    j["bound"] = pass ? "pass" : "fail";
    std::cout << j.dump() << '\n';
    return pass ? 0 : 1;
}

struct OracleArgs {
    std::string graph;
    std::string process;
    std::size_t max_n = 4;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
};

int cmd_oracle_expected(const OracleArgs& a) {
    const ProcessKind kind = process_from(a.process);
    AnyGraph g = read_edge_list(std::filesystem::path(a.graph));
    nlohmann::ordered_json j;
    std::visit(
        [&](const auto& graph) {
            auto exact = oracle::expected_rounds_exact(graph, kind);
            std::ostringstream s;
            s << numerator(exact) << '/' << denominator(exact);
            j["exact"] = s.str();
            j["expected_rounds"] = exact.template convert_to<double>();
        },
        g);
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_oracle_nonmonotone(const OracleArgs& a) {
    const ProcessKind kind = process_from(a.process);
    if (a.max_n > 5) throw UsageError("--max-n must be <= 5");
    auto pairs = oracle::nonmonotone_search(a.max_n, kind);
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& p : pairs) {
        nlohmann::ordered_json j;
        j["n"] = p.n;
        j["g_edges"] = p.g_edges;
        j["h_edges"] = p.h_edges;
        j["g_rounds"] = p.g_rounds;
        j["h_rounds"] = p.h_rounds;
        if (!p.g_exact.empty()) {
            j["g_exact"] = p.g_exact;
            j["h_exact"] = p.h_exact;
        }
        out.push_back(j);
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_oracle_compare(const OracleArgs& a) {
    const ProcessKind kind = process_from(a.process);
    AnyGraph g = read_edge_list(std::filesystem::path(a.graph));
    std::cout << oracle::empirical_vs_exact(g, kind, a.trials, a.seed).to_json() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Round-synchronous simulator for gossip-based discovery processes"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph as an edge list");
    gen_cmd->add_option("--family", gen.family, "path|cycle|star|complete|random|lollipop|dweak|dstrong")->required();
    gen_cmd->add_option("--n", gen.n, "Node count")->required();
    gen_cmd->add_option("--p", gen.p, "Extra-edge probability (random)");
    gen_cmd->add_option("--clique-frac", gen.clique_frac, "Clique share (lollipop)");
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("--out", gen.out, "Output path (stdout if omitted)");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run one process to convergence");
    run_cmd->add_option("--graph", run.graph, "Edge-list file")->required();
    run_cmd->add_option("--process", run.process, "tri|twohop|dtwohop")->required();
    run_cmd->add_option("--seed", run.seed, "RNG seed")->required();
    run_cmd->add_option("--max-rounds", run.max_rounds, "Round cap");
    run_cmd->add_option("--trace", run.trace, "Per-round trace CSV");
    run_cmd->add_flag("--trace-ties", run.trace_ties, "Record strong-tie counts (undirected)");
    run_cmd->add_option("--trace-cut", run.trace_cut, "Track untouched cuts from this label (directed)");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Seeded Monte Carlo sweep");
    sweep_cmd->add_option("--family", sweep.family, "Graph family")->required();
    sweep_cmd->add_option("--process", sweep.process, "tri|twohop|dtwohop")->required();
    sweep_cmd->add_option("--sizes", sweep.sizes, "Comma-separated sizes")->required()->delimiter(',');
    sweep_cmd->add_option("--trials", sweep.trials, "Trials per size")->required();
    sweep_cmd->add_option("--seed", sweep.seed, "Master seed")->required();
    sweep_cmd->add_option("--out", sweep.out, "Per-trial CSV path")->required();
    sweep_cmd->add_option("--max-rounds", sweep.max_rounds, "Round cap per trial");
    sweep_cmd->add_option("--p", sweep.p, "Extra-edge probability (random)");
    sweep_cmd->add_option("--clique-frac", sweep.clique_frac, "Clique share (lollipop)");
    sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads (default GOSSIP_SIM_JOBS or all cores)");
    sweep_cmd->add_flag("--serial", sweep.serial, "Use the single-threaded reference runner");
    sweep_cmd->add_flag("--self-check", sweep.self_check, "Re-read the CSV and recompute aggregates");

    auto* analyze_cmd = app.add_subcommand("analyze", "Analysis reports");
    analyze_cmd->require_subcommand(1);
    std::string scaling_in;
    auto* scaling_cmd = analyze_cmd->add_subcommand("scaling", "Normalized median tables from a sweep CSV");
    scaling_cmd->add_option("--in", scaling_in, "Sweep CSV")->required();
    PhArgs ph;
    auto* ph_cmd = analyze_cmd->add_subcommand("ph-bound", "Check the chain-edge recurrence bound");
    ph_cmd->add_option("--n", ph.n, "Node count")->required();
    ph_cmd->add_option("--alpha", ph.alpha, "Bound constant alpha");
    ph_cmd->add_option("--eps", ph.eps, "Horizon constant eps");
    ph_cmd->add_option("--H", ph.max_h, "Largest hop span checked");
    ph_cmd->add_option("--T", ph.rounds, "Rounds to iterate (default floor(eps n^2))");

    OracleArgs orc;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exact small-instance computations");
    oracle_cmd->require_subcommand(1);
    auto* expected_cmd = oracle_cmd->add_subcommand("expected", "Exact expected rounds");
    expected_cmd->add_option("--graph", orc.graph, "Edge-list file")->required();
    expected_cmd->add_option("--process", orc.process, "tri|twohop|dtwohop")->required();
    auto* nonmono_cmd = oracle_cmd->add_subcommand("nonmonotone", "Search for slower supergraphs");
    nonmono_cmd->add_option("--max-n", orc.max_n, "Largest node count (<= 5)");
    nonmono_cmd->add_option("--process", orc.process, "tri|twohop")->required();
    auto* compare_cmd = oracle_cmd->add_subcommand("compare", "Monte Carlo vs exact report (JSON)");
    compare_cmd->add_option("--graph", orc.graph, "Edge-list file")->required();
    compare_cmd->add_option("--process", orc.process, "tri|twohop|dtwohop")->required();
    compare_cmd->add_option("--trials", orc.trials, "Trials");
    compare_cmd->add_option("--seed", orc.seed, "Master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*run_cmd) return cmd_run(run);
        if (*sweep_cmd) return cmd_sweep(sweep);
        if (*scaling_cmd) return cmd_scaling(scaling_in);
        if (*ph_cmd) return cmd_ph_bound(ph);
        if (*expected_cmd) return cmd_oracle_expected(orc);
        if (*nonmono_cmd) return cmd_oracle_nonmonotone(orc);
        if (*compare_cmd) return cmd_oracle_compare(orc);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const ConstraintError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const oracle::OracleRefusal& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
