#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "coexsim/report.hpp"
#include "coexsim/scenario.hpp"
#include "coexsim/validate.hpp"
#include "helpers.hpp"

using namespace coexsim;
using namespace coexsim::test;

namespace {

const char* kMinimal = R"({
  "version": 1,
  "seeds": [1],
  "groups": [
    {"kind": "wifi"},
    {"kind": "nru_gap", "delta_us": 9}
  ]
})";

ScenarioSpec small_spec() {
    ScenarioSpec spec = parse_scenario(kMinimal);
    spec.rounds = 500;
    spec.seeds = {1, 2, 3};
    return spec;
}

}  // namespace

TEST_CASE("a minimal file fills the documented defaults") {
    const ScenarioSpec spec = parse_scenario(kMinimal);
    CHECK(spec.rounds == 100000);
    CHECK(spec.sync_mode == SyncMode::Desynchronized);
    CHECK(spec.sim.slot_sigma == 9000);
    CHECK(spec.sim.sifs == 16000);
    CHECK(spec.sim.sensing_cs == 1000);

    const std::vector<NodeConfig> nodes = expand_nodes(spec);
    REQUIRE(nodes.size() == 2);
    CHECK(nodes[0].kind == TechnologyKind::RandomAccess);
    CHECK(nodes[0].cls.p == 3);       // AC_BE
    CHECK(nodes[0].cls.cw_min == 15);
    CHECK(nodes[0].cls.cw_max == 63);
    CHECK(nodes[0].cls.o_max == 2528000);
    CHECK(nodes[0].data_duration == 2100_us);
    CHECK(nodes[0].ack_duration == 50_us);
    CHECK(nodes[1].kind == TechnologyKind::SyncGap);
    CHECK(nodes[1].cls.o_max == 8_ms);  // 3GPP priority 3
    CHECK(nodes[1].delta == 9_us);
    CHECK(nodes[1].data_duration == 6000_us);
}

TEST_CASE("malformed or invalid scenarios are rejected with messages") {
    CHECK_THROWS_WITH_AS(parse_scenario("{"), doctest::Contains("parse error"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"version":2,"seeds":[1],"groups":[{"kind":"wifi"}]})"),
                         doctest::Contains("version"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"version":1,"groups":[{"kind":"wifi"}]})"),
                         doctest::Contains("seeds"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"version":1,"seeds":[1],"groups":[{"kind":"wifi","typo":3}]})"),
        doctest::Contains("unknown field"), std::runtime_error);
    // sync slot of 10 us is not a scheduling granularity
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"version":1,"seeds":[1],"groups":[{"kind":"nru_gap","delta_us":10}]})"),
        doctest::Contains("sync slot"), std::runtime_error);
    // data duration above the occupancy limit
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"version":1,"seeds":[1],"groups":[{"kind":"wifi","data_us":5400}]})"),
        doctest::Contains("o_max"), std::runtime_error);
}

TEST_CASE("node-level validation pins every invariant") {
    const SimParams params;

    SUBCASE("long transmissions are fine under the right class") {
        std::vector<NodeConfig> nodes = {gap_node(0, 1000_us, 6000_us)};  // 6 ms under 8 ms
        CHECK(validate_nodes(params, nodes).empty());
    }
    SUBCASE("phase must stay below delta") {
        std::vector<NodeConfig> nodes = {gap_node(0, 9_us, 6000_us, be_class(), 9_us)};
        CHECK(!validate_nodes(params, nodes).empty());
    }
    SUBCASE("random access must not carry a grid") {
        NodeConfig n = wifi_node(0);
        n.delta = 9_us;
        CHECK(!validate_nodes(params, {n}).empty());
    }
    SUBCASE("empty scenarios are rejected") {
        CHECK(!validate_nodes(params, {}).empty());
    }
    SUBCASE("sensing time must stay below half a slot") {
        SimParams bad;
        bad.sensing_cs = 4500;
        CHECK(!validate_sim_params(bad).empty());
        CHECK(validate_sim_params(SimParams{}).empty());
    }
    SUBCASE("reservation signal cannot outlast the data window") {
        std::vector<NodeConfig> nodes = {rs_node(0, 1000_us, 800_us)};
        CHECK(!validate_nodes(params, nodes).empty());
    }
}

TEST_CASE("scenario results are byte-identical across repeats and job counts") {
    const ScenarioSpec spec = small_spec();

    std::ostringstream a, b, parallel;
    write_csv(a, run_scenario(spec, 1));
    write_csv(b, run_scenario(spec, 1));
    write_csv(parallel, run_scenario(spec, 3));
    CHECK(a.str() == b.str());
    CHECK(a.str() == parallel.str());

    std::ostringstream ja, jb;
    write_json(ja, run_scenario(spec, 1));
    write_json(jb, run_scenario(spec, 2));
    CHECK(ja.str() == jb.str());
}

TEST_CASE("csv column set is fixed and versioned") {
    CHECK(csv_header() ==
          "schema,scenario,axis,axis_value,record,seed,node_id,technology,kind,"
          "attempts,successes,collisions,occupancy_ns,success_occupancy_ns,effective_ns,"
          "elapsed_ns,rounds,o,s_cot,s_eff,c,b_mbps,o_ci95,s_cot_ci95,s_eff_ci95,c_ci95,b_ci95");

    std::ostringstream out;
    write_csv(out, run_scenario(small_spec(), 1));
    const std::string text = out.str();
    CHECK(text.substr(0, text.find('\n')) == csv_header());
    // per seed: one row per node, three technology rows; then three summaries
    const std::size_t rows = static_cast<std::size_t>(
        std::count(text.begin(), text.end(), '\n'));
    CHECK(rows == 1 + 3 * (2 + 3) + 3);

    // every row carries the full fixed column set
    const std::string header = csv_header();
    const std::size_t columns =
        static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        CHECK(static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) == columns - 1);
    }
}

TEST_CASE("link rates turn effective airtime into throughput columns") {
    ScenarioSpec spec = small_spec();
    spec.rates = Rates{6.0, 12.0};
    const ScenarioResult result = run_scenario(spec, 1);
    for (const SeedResult& run : result.seeds) {
        REQUIRE(run.metrics.wifi.throughput_mbps.has_value());
        CHECK(*run.metrics.wifi.throughput_mbps ==
              doctest::Approx(6.0 * run.metrics.wifi.s_eff));
        CHECK(*run.metrics.laa_nru.throughput_mbps ==
              doctest::Approx(12.0 * run.metrics.laa_nru.s_eff));
    }
    std::ostringstream out;
    write_json(out, result);
    const ParsedRun parsed = parse_results_json(out.str());
    CHECK(parsed.seeds[0].metrics.wifi.throughput_mbps ==
          result.seeds[0].metrics.wifi.throughput_mbps);
}

TEST_CASE("free-form names are quoted per RFC 4180") {
    ScenarioSpec spec = small_spec();
    spec.name = "mix, 1v1 \"baseline\"";
    std::ostringstream out;
    write_csv(out, run_scenario(spec, 1));
    const std::string text = out.str();
    CHECK(text.find("\"mix, 1v1 \"\"baseline\"\"\"") != std::string::npos);

    // quoted commas do not change the parsed field count
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    const std::size_t columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    std::getline(lines, line);
    std::size_t fields = 0;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        if (c == ',' && !quoted) ++fields;
    }
    CHECK(fields == columns);
}

TEST_CASE("json results round-trip through the documented schema") {
    const ScenarioResult result = run_scenario(small_spec(), 1);
    std::ostringstream out;
    write_json(out, result, "delta_us", "9");
    const ParsedRun parsed = parse_results_json(out.str());

    CHECK(parsed.schema == kResultSchema);
    CHECK(parsed.scenario == result.spec.name);
    CHECK(parsed.axis == "delta_us");
    CHECK(parsed.axis_value == "9");
    REQUIRE(parsed.seeds.size() == result.seeds.size());
    for (std::size_t i = 0; i < parsed.seeds.size(); ++i) {
        CHECK(parsed.seeds[i].seed == result.seeds[i].seed);
        CHECK(parsed.seeds[i].stats == result.seeds[i].stats);
        for (std::size_t k = 0; k < result.nodes.size(); ++k) {
            CHECK(parsed.seeds[i].metrics.nodes[k].occupancy ==
                  result.seeds[i].metrics.nodes[k].occupancy);
            CHECK(parsed.seeds[i].metrics.nodes[k].collision_prob ==
                  result.seeds[i].metrics.nodes[k].collision_prob);
        }
        CHECK(parsed.seeds[i].metrics.wifi.s_cot == result.seeds[i].metrics.wifi.s_cot);
        CHECK(parsed.seeds[i].metrics.laa_nru.s_eff == result.seeds[i].metrics.laa_nru.s_eff);
    }
}

TEST_CASE("sweeps expand, validate and order their points") {
    ScenarioSpec base = small_spec();

    SUBCASE("axis application") {
        const ScenarioSpec at63 = apply_axis(base, SweepAxis::Delta, "63");
        CHECK(expand_nodes(at63)[1].delta == 63_us);
        CHECK(expand_nodes(at63)[0].delta == 0);  // random access untouched

        const ScenarioSpec at4 = apply_axis(base, SweepAxis::Count, "4");
        CHECK(expand_nodes(at4).size() == 8);

        const ScenarioSpec sync = apply_axis(base, SweepAxis::Mode, "synchronized");
        CHECK(sync.sync_mode == SyncMode::Synchronized);

        const ScenarioSpec longer = apply_axis(base, SweepAxis::DataDuration, "2500");
        CHECK(expand_nodes(longer)[1].data_duration == 2500_us);
    }

    SUBCASE("sweep run emits one block per value in order") {
        SweepSpec sweep;
        sweep.base = base;
        sweep.axis = SweepAxis::Delta;
        sweep.values = {"9", "125"};
        const std::vector<SweepPointResult> points = run_sweep(sweep, 1);
        REQUIRE(points.size() == 2);
        CHECK(points[0].axis_value == "9");
        CHECK(points[1].axis_value == "125");

        std::ostringstream out;
        write_sweep_csv(out, points, to_string(sweep.axis));
        const std::string text = out.str();
        CHECK(text.find(",delta_us,9,") != std::string::npos);
        CHECK(text.find(",delta_us,125,") != std::string::npos);
        CHECK(text.find(",delta_us,9,") < text.find(",delta_us,125,"));
    }
}

TEST_CASE("per-round traces carry round, time, delay, winners and kind") {
    ScenarioSpec spec = small_spec();
    spec.rounds = 20;
    spec.seeds = {7};

    std::ostringstream trace;
    write_trace_header(trace);
    std::function<void(std::uint64_t, const Simulation&, const RoundOutcome&)> observer =
        [&](std::uint64_t seed, const Simulation&, const RoundOutcome& o) {
            write_trace_row(trace, spec.name, seed, o);
        };
    run_scenario(spec, 1, &observer);

    const std::string text = trace.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 21);  // header + 20 rounds
    CHECK(text.rfind("schema,scenario,seed,round,t_ns,delta_ns,winners,kind", 0) == 0);
    CHECK(text.find("success") != std::string::npos);
}
