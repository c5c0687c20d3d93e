#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coexsim/engine.hpp"
#include "coexsim/metrics.hpp"
#include "coexsim/params.hpp"
#include "coexsim/tables.hpp"

namespace coexsim {

/// One homogeneous block of nodes in a scenario file.
struct GroupSpec {
    int count = 1;
    TechnologyKind kind = TechnologyKind::RandomAccess;
    RegSpec spec = RegSpec::Ieee80211;
    int priority = 3;  ///< class id within the spec (3 = AC_BE for 802.11)
    Nanos delta = 0;   ///< sync slot; ignored for random access
    Nanos data_duration = 0;
    Nanos ack_duration = 0;
};

/// Declarative description of a run, as parsed from a scenario file.
struct ScenarioSpec {
    std::string name;
    SimParams sim;
    std::vector<GroupSpec> groups;
    std::int64_t rounds = 100000;
    std::vector<std::uint64_t> seeds;
    SyncMode sync_mode = SyncMode::Desynchronized;
    bool wifi_ppdu_max_override = false;
    std::optional<Rates> rates;
};

enum class SweepAxis { Count, Delta, Mode, DataDuration };

struct SweepSpec {
    ScenarioSpec base;
    SweepAxis axis = SweepAxis::Delta;
    std::vector<std::string> values;  ///< as written in the file, kept for labeling
};

const char* to_string(SweepAxis axis);

/// Expands the group blocks to a flat node list (ids in listing order).
/// Phases are 0 here; each run draws them per its sync mode.
std::vector<NodeConfig> expand_nodes(const ScenarioSpec& spec);

/// Validates the spec end to end (group fields, expanded nodes, run block).
std::vector<std::string> validate_scenario(const ScenarioSpec& spec);

/// Parses the versioned JSON scenario format. Throws std::runtime_error with
/// a description on malformed input; validation errors are joined into the
/// message as one line each.
ScenarioSpec parse_scenario(const std::string& text);
ScenarioSpec parse_scenario_file(const std::string& path);

/// Parses the sweep block of a scenario file. Throws when absent/invalid.
SweepSpec parse_sweep_file(const std::string& path);

/// Applies one axis value to a copy of the base scenario.
ScenarioSpec apply_axis(const ScenarioSpec& base, SweepAxis axis, const std::string& value);

struct SeedResult {
    std::uint64_t seed = 0;
    StatsAccumulator stats;
    MetricsReport metrics;
};

struct ScenarioResult {
    ScenarioSpec spec;
    std::vector<NodeConfig> nodes;
    std::vector<SeedResult> seeds;
};

/// Runs every seed of the scenario. jobs > 1 runs seeds concurrently; the
/// result ordering (and therefore any emitted file) is independent of it.
/// The observer, when set, forces serial execution.
ScenarioResult run_scenario(const ScenarioSpec& spec, int jobs = 1,
                            const std::function<void(std::uint64_t, const Simulation&,
                                                     const RoundOutcome&)>* observer = nullptr);

struct SweepPointResult {
    std::string axis_value;
    ScenarioResult result;
};

std::vector<SweepPointResult> run_sweep(const SweepSpec& sweep, int jobs = 1);

}  // namespace coexsim
