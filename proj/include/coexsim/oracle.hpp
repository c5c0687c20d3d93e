#pragma once

#include <cstdint>
#include <vector>

#include "coexsim/engine.hpp"
#include "coexsim/params.hpp"

namespace coexsim {

/// Exact expectations for one node over an enumerated horizon.
struct ExhaustiveNode {
    double attempts = 0;
    double successes = 0;
    double collisions = 0;
    double occupancy = 0;  ///< E[O]
    double s_cot = 0;      ///< E[S_COT]
    double s_eff = 0;      ///< E[S_EFF]
    double collision_prob_given_active = 0;  ///< E[c/x | x > 0]
    double active_probability = 0;           ///< P(x > 0)
};

struct ExhaustiveReport {
    std::int64_t branches = 0;        ///< enumerated leaves
    double probability_mass = 0;      ///< sums to 1 up to rounding
    double round_collision_prob = 0;  ///< E[collision rounds] / horizon
    std::vector<ExhaustiveNode> nodes;
};

struct ExhaustiveLimits {
    int max_nodes = 3;
    int max_cw = 7;
    int max_horizon_with_doubling = 3;
    std::int64_t max_branches = 4000000;
};

/// Ground truth by enumeration: walks every joint backoff-draw sequence over
/// `horizon` rounds with its exact probability, replaying the engine's own
/// round resolution on each branch. Node phases must already be concrete.
/// Throws std::runtime_error with a size estimate when the instance exceeds
/// the limits.
ExhaustiveReport exhaustive_metrics(const SimParams& params, const std::vector<NodeConfig>& nodes,
                                    int horizon, const ExhaustiveLimits& limits = {});

/// Two identical random-access nodes with a fixed contention window: the
/// loser carries a residual backoff into the next round, which makes the
/// round sequence a Markov chain over that residual. State 0 is "both draw
/// fresh" (after a collision), state r >= 1 is the carried residual.
std::vector<std::vector<double>> two_node_chain(int cw);

struct TwoNodeStationary {
    double collision_probability = 0;        ///< long-run per-attempt C
    double round_collision_probability = 0;  ///< stationary share of collision rounds
    std::vector<double> distribution;        ///< stationary weight per chain state
};

/// Solves the chain's stationary distribution exactly (dense linear solve)
/// and maps it to the per-attempt collision probability of either node.
TwoNodeStationary two_node_stationary(int cw);

}  // namespace coexsim
