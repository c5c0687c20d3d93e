#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coexsim/oracle.hpp"
#include "coexsim/report.hpp"
#include "coexsim/scenario.hpp"

namespace {

using namespace coexsim;

struct OutputTarget {
    explicit OutputTarget(const std::string& path) {
        if (path.empty()) return;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw std::runtime_error("cannot open output file: " + path);
    }
    std::ostream& stream() { return file ? *file : std::cout; }
    void finish() {
        if (!file) return;
        file->flush();
        if (!*file) throw std::runtime_error("failed writing output file");
    }
    std::unique_ptr<std::ofstream> file;
};

struct CommonFlags {
    std::string scenario_path;
    std::string out_path;
    std::string format = "csv";
    std::string trace_path;
    std::int64_t rounds = 0;
    std::vector<std::uint64_t> seeds;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_trace) {
    cmd->add_option("scenario", flags.scenario_path, "scenario file (JSON)")->required();
    cmd->add_option("--rounds", flags.rounds, "override the contention-round count");
    cmd->add_option("--seeds,--seed", flags.seeds, "override the seed list")->delimiter(',');
    cmd->add_option("--out", flags.out_path, "write results to a file instead of stdout");
    cmd->add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--jobs", flags.jobs, "run seeds concurrently")->check(CLI::PositiveNumber);
    if (with_trace) {
        cmd->add_option("--log-rounds", flags.trace_path,
                        "also write a per-round trace (forces --jobs 1)");
    }
}

void apply_overrides(ScenarioSpec& spec, const CommonFlags& flags) {
    if (flags.rounds > 0) spec.rounds = flags.rounds;
    if (!flags.seeds.empty()) spec.seeds = flags.seeds;
}

int cmd_run(const CommonFlags& flags) {
    ScenarioSpec spec = parse_scenario_file(flags.scenario_path);
    apply_overrides(spec, flags);

    std::ofstream trace;
    std::function<void(std::uint64_t, const Simulation&, const RoundOutcome&)> observer;
    if (!flags.trace_path.empty()) {
        trace.open(flags.trace_path);
        if (!trace) throw std::runtime_error("cannot open trace file: " + flags.trace_path);
        write_trace_header(trace);
        observer = [&](std::uint64_t seed, const Simulation&, const RoundOutcome& o) {
            write_trace_row(trace, spec.name, seed, o);
        };
    }

    const ScenarioResult result =
        run_scenario(spec, flags.jobs, observer ? &observer : nullptr);
    OutputTarget out(flags.out_path);
    if (flags.format == "json") write_json(out.stream(), result);
    else write_csv(out.stream(), result);
    out.finish();
    if (trace.is_open()) {
        trace.flush();
        if (!trace) throw std::runtime_error("failed writing trace file");
    }
    return 0;
}

int cmd_sweep(const CommonFlags& flags) {
    SweepSpec sweep = parse_sweep_file(flags.scenario_path);
    apply_overrides(sweep.base, flags);

    const std::vector<SweepPointResult> points = run_sweep(sweep, flags.jobs);
    OutputTarget out(flags.out_path);
    if (flags.format == "json") write_sweep_json(out.stream(), points, to_string(sweep.axis));
    else write_sweep_csv(out.stream(), points, to_string(sweep.axis));
    out.finish();
    return 0;
}

int cmd_validate(const std::string& path) {
    try {
        parse_scenario_file(path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}

int cmd_oracle_exhaustive(const std::string& path, int horizon, std::uint64_t phase_seed,
                          const std::string& out_path) {
    const ScenarioSpec spec = parse_scenario_file(path);
    std::vector<NodeConfig> nodes = expand_nodes(spec);
    Rng rng(phase_seed != 0 ? phase_seed : spec.seeds.front());
    const std::vector<Nanos> phases = draw_offsets(nodes, spec.sync_mode, rng);
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].phase = phases[i];

    const ExhaustiveReport report = exhaustive_metrics(spec.sim, nodes, horizon);
    nlohmann::json doc;
    doc["schema"] = "coexsim-oracle-v1";
    doc["kind"] = "exhaustive";
    doc["scenario"] = spec.name;
    doc["horizon"] = horizon;
    doc["branches"] = report.branches;
    doc["probability_mass"] = report.probability_mass;
    doc["round_collision_prob"] = report.round_collision_prob;
    nlohmann::json arr = nlohmann::json::array();
    for (const ExhaustiveNode& n : report.nodes) {
        arr.push_back({{"attempts", n.attempts},
                       {"successes", n.successes},
                       {"collisions", n.collisions},
                       {"o", n.occupancy},
                       {"s_cot", n.s_cot},
                       {"s_eff", n.s_eff},
                       {"c_given_active", n.collision_prob_given_active},
                       {"active_probability", n.active_probability}});
    }
    doc["nodes"] = std::move(arr);
    OutputTarget out(out_path);
    out.stream() << doc.dump(2) << "\n";
    out.finish();
    return 0;
}

int cmd_oracle_two_node(int cw, const std::string& out_path) {
    const TwoNodeStationary result = two_node_stationary(cw);
    nlohmann::json doc;
    doc["schema"] = "coexsim-oracle-v1";
    doc["kind"] = "two_node_stationary";
    doc["cw"] = cw;
    doc["collision_probability"] = result.collision_probability;
    doc["round_collision_probability"] = result.round_collision_probability;
    doc["stationary"] = result.distribution;
    OutputTarget out(out_path);
    out.stream() << doc.dump(2) << "\n";
    out.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coexsim: downlink contention simulator for Wi-Fi / LAA / NR-U coexistence"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "run a scenario over its seed list");
    add_common(run, run_flags, true);

    CommonFlags sweep_flags;
    CLI::App* sweep = app.add_subcommand("sweep", "run a scenario across an axis of values");
    add_common(sweep, sweep_flags, false);

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("scenario", validate_path, "scenario file (JSON)")->required();

    CLI::App* oracle = app.add_subcommand("oracle", "exact small-instance ground truth");
    oracle->require_subcommand(1);

    std::string ex_path, ex_out;
    int ex_horizon = 1;
    std::uint64_t ex_seed = 0;
    CLI::App* exhaustive = oracle->add_subcommand("exhaustive", "enumerate every draw sequence");
    exhaustive->add_option("scenario", ex_path, "scenario file (JSON)")->required();
    exhaustive->add_option("--horizon", ex_horizon, "rounds to enumerate")->check(CLI::PositiveNumber);
    exhaustive->add_option("--phase-seed", ex_seed, "seed for desynchronized grid offsets");
    exhaustive->add_option("--out", ex_out, "output file");

    int tn_cw = 3;
    std::string tn_out;
    CLI::App* two_node = oracle->add_subcommand(
        "two-node", "stationary collision probability, two identical fixed-CW nodes");
    two_node->add_option("--cw", tn_cw, "fixed contention window")->required();
    two_node->add_option("--out", tn_out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_flags);
        if (sweep->parsed()) return cmd_sweep(sweep_flags);
        if (validate->parsed()) return cmd_validate(validate_path);
        if (exhaustive->parsed()) return cmd_oracle_exhaustive(ex_path, ex_horizon, ex_seed, ex_out);
        if (two_node->parsed()) return cmd_oracle_two_node(tn_cw, tn_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
