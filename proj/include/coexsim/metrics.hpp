#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coexsim/params.hpp"

namespace coexsim {

/// Per-node tallies gathered over a run. Time sums are exact integers.
struct NodeStats {
    std::int64_t attempts = 0;    ///< rounds in the winner set
    std::int64_t successes = 0;   ///< sole-winner rounds
    std::int64_t collisions = 0;  ///< attempts - successes
    Nanos occupancy = 0;          ///< sum of P over attempts
    Nanos success_occupancy = 0;  ///< sum of P over successes
    Nanos effective = 0;          ///< sum of payload (D minus any RS) over successes

    bool operator==(const NodeStats&) const = default;
};

struct StatsAccumulator {
    std::vector<NodeStats> nodes;
    Nanos total_elapsed = 0;  ///< absolute clock after the last resolved round
    std::int64_t rounds = 0;
    std::int64_t collision_rounds = 0;

    bool operator==(const StatsAccumulator&) const = default;
};

/// Normalized per-node figures. Ratios whose denominator is zero (a node that
/// never attempted) are reported as absent, never as zero.
struct NodeMetrics {
    double occupancy = 0;  ///< O: all transmission airtime / elapsed
    double s_cot = 0;      ///< successful airtime / elapsed
    double s_eff = 0;      ///< successful payload airtime / elapsed
    std::optional<double> collision_prob;  ///< collisions / attempts
};

struct TechMetrics {
    double occupancy = 0;  ///< sum of member O (can exceed 1 when collisions overlap)
    double s_cot = 0;
    double s_eff = 0;
    std::optional<double> collision_prob;  ///< aggregate collisions / attempts
    std::int64_t attempts = 0;
    std::int64_t successes = 0;
    std::int64_t collisions = 0;
    std::optional<double> throughput_mbps;  ///< rate * s_eff when a rate is given
};

struct MetricsReport {
    std::vector<NodeMetrics> nodes;
    TechMetrics wifi;     ///< random-access nodes
    TechMetrics laa_nru;  ///< synchronous nodes (RS or gap)
    TechMetrics total;
};

/// Individual figures. All of them require total_elapsed > 0 and throw
/// std::domain_error otherwise.
double node_occupancy(const StatsAccumulator& acc, int node);
struct SuccessMetrics {
    double s_cot = 0;
    double s_eff = 0;
};
SuccessMetrics success_metrics(const StatsAccumulator& acc, int node);
std::optional<double> collision_probability(const StatsAccumulator& acc, int node);
double throughput_mbps(double rate_mbps, double s_eff);

struct TechnologyTotals {
    double total = 0;
    double wifi = 0;
    double laa_nru = 0;
};
TechnologyTotals technology_totals(const StatsAccumulator& acc, const std::vector<NodeConfig>& nodes);

struct Rates {
    double wifi_mbps = 0;
    double laa_nru_mbps = 0;
};

MetricsReport compute_report(const StatsAccumulator& acc, const std::vector<NodeConfig>& nodes,
                             const std::optional<Rates>& rates = std::nullopt);

}  // namespace coexsim
