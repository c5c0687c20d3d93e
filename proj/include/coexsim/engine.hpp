#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "coexsim/metrics.hpp"
#include "coexsim/params.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/slot_grid.hpp"

namespace coexsim {

/// Discrete round counter plus the absolute channel time it maps to.
struct SimClock {
    std::int64_t round = 0;
    Nanos now = 0;
};

/// Dynamic contention state of one node.
struct NodeState {
    int backoff = 0;      ///< residual backoff slots b
    Nanos sync_wait = 0;  ///< time to the next sync slot after countdown (RS or gap), 0 for random access
    int cw = 0;           ///< current contention window
    NodeStats stats;
};

/// How a transmission occupies the channel once a node wins a round.
struct TransmissionProfile {
    Nanos total = 0;    ///< P: airtime seen by everyone else
    Nanos rs = 0;       ///< leading reservation-signal part (SyncRs only)
    Nanos payload = 0;  ///< data part that counts as effective time
};

TransmissionProfile transmission_profile(const SimParams& params, const NodeConfig& node,
                                         Nanos sync_wait);

struct RoundOutcome {
    std::int64_t round = 0;    ///< index of the resolved round
    Nanos delay = 0;           ///< idle contention time (delta * sigma), exact ns
    std::vector<int> winners;  ///< ascending node ids
    std::vector<Nanos> winner_occupancy;  ///< P of each winner, same order
    bool success = false;      ///< exactly one winner
    Nanos max_occupancy = 0;   ///< longest P among winners
    Nanos airtime = 0;         ///< delay + max_occupancy, equals the clock step
    Nanos t_after = 0;
};

/// Offset from the cycle start at which this node is ready to transmit:
/// (p + b) slots, plus the gap for nodes that defer instead of reserving.
Nanos access_offset(const SimParams& params, const NodeConfig& node, const NodeState& state);

/// Idle time until the first node of the cycle starts transmitting.
/// Throws std::invalid_argument on an empty node set.
Nanos contention_delay(const SimParams& params, std::span<const NodeConfig> nodes,
                       std::span<const NodeState> states);

/// Nodes whose countdown completes before they can sense the transmission
/// that started at `delay`: everyone within the carrier-sensing time.
std::vector<int> winner_set(const SimParams& params, std::span<const NodeConfig> nodes,
                            std::span<const NodeState> states, Nanos delay);

SimClock advance_clock(const SimClock& clock, Nanos delay, Nanos max_occupancy);

/// Post-round contention window for a participant: reset on success,
/// doubled (capped) on collision.
int update_cw(const PriorityClassParams& cls, int cw, bool success);

/// Backoff left to a non-winner after the round's idle time elapsed.
/// Counts whole observed slots beyond the node's fixed slots; for gap nodes
/// the slots spent inside their own pending gap do not count.
int decremented_backoff(const SimParams& params, const NodeConfig& node, const NodeState& state,
                        Nanos delay);

/// Deterministic part of one round, fixed before any redraw happens.
struct RoundPlan {
    Nanos delay = 0;
    std::vector<int> winners;
    bool success = false;
};

/// One contention world: per-node state plus the clock. Copyable by value,
/// which is what the branch-enumeration oracle leans on.
class Simulation {
public:
    Simulation(SimParams params, std::vector<NodeConfig> nodes);

    /// Draws every node's initial backoff from [0, cw_min] (node-id order)
    /// and computes the initial sync waits at t = 0.
    void init(BackoffDrawer& drawer);
    void init(std::span<const int> initial_backoffs);

    RoundPlan plan_round() const;

    /// Contention window a winner will redraw from after this round.
    int post_round_cw(int node, bool success) const;

    /// Commits a planned round: stats, clock, CW updates, winner redraws
    /// (one value per winner, in ascending id order), non-winner decrements,
    /// and fresh sync waits for every scheduled node.
    RoundOutcome apply_round(const RoundPlan& plan, std::span<const int> winner_draws);

    RoundOutcome step(BackoffDrawer& drawer);

    const SimParams& params() const { return params_; }
    const std::vector<NodeConfig>& nodes() const { return nodes_; }
    const std::vector<NodeState>& states() const { return states_; }
    const SimClock& clock() const { return clock_; }

    StatsAccumulator stats() const;

private:
    void refresh_sync_waits();

    SimParams params_;
    std::vector<NodeConfig> nodes_;
    std::vector<NodeState> states_;
    SimClock clock_;
    std::int64_t collision_rounds_ = 0;
};

using RoundObserver = std::function<void(const Simulation&, const RoundOutcome&)>;

struct RunConfig {
    std::int64_t rounds = 100000;
    std::uint64_t seed = 1;
    SyncMode sync_mode = SyncMode::Desynchronized;
};

/// Full Monte Carlo run: phase draw, initial backoffs, `rounds` resolved
/// cycles. Deterministic in (nodes, config). Node phases are overwritten
/// according to the sync mode.
StatsAccumulator run_single(const SimParams& params, std::vector<NodeConfig> nodes,
                            const RunConfig& config, const RoundObserver* observer = nullptr);

}  // namespace coexsim
