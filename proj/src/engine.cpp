#include "coexsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace coexsim {

TransmissionProfile transmission_profile(const SimParams& params, const NodeConfig& node,
                                         Nanos sync_wait) {
    TransmissionProfile out;
    switch (node.kind) {
        case TechnologyKind::RandomAccess:
            out.total = node.data_duration + params.sifs + node.ack_duration + params.sifs;
            out.payload = node.data_duration;
            break;
        case TechnologyKind::SyncGap:
            out.total = node.data_duration + params.sifs;
            out.payload = node.data_duration;
            break;
        case TechnologyKind::SyncRs:
            // The node starts emitting at countdown completion; the first
            // sync_wait of the data window is reservation signal, so RS time
            // counts toward the occupancy limit but not toward payload.
            out.total = node.data_duration + params.sifs;
            out.rs = sync_wait;
            out.payload = node.data_duration - sync_wait;
            break;
    }
    return out;
}

Nanos access_offset(const SimParams& params, const NodeConfig& node, const NodeState& state) {
    Nanos offset = (node.cls.p + state.backoff) * params.slot_sigma;
    if (node.kind == TechnologyKind::SyncGap) offset += state.sync_wait;
    return offset;
}

Nanos contention_delay(const SimParams& params, std::span<const NodeConfig> nodes,
                       std::span<const NodeState> states) {
    if (nodes.empty()) throw std::invalid_argument("contention requires at least one node");
    Nanos best = access_offset(params, nodes[0], states[0]);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        best = std::min(best, access_offset(params, nodes[i], states[i]));
    }
    return best;
}

std::vector<int> winner_set(const SimParams& params, std::span<const NodeConfig> nodes,
                            std::span<const NodeState> states, Nanos delay) {
    std::vector<int> winners;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (access_offset(params, nodes[i], states[i]) - delay < params.sensing_cs) {
            winners.push_back(static_cast<int>(i));
        }
    }
    return winners;
}

SimClock advance_clock(const SimClock& clock, Nanos delay, Nanos max_occupancy) {
    return {clock.round + 1, clock.now + delay + max_occupancy};
}

int update_cw(const PriorityClassParams& cls, int cw, bool success) {
    if (success) return cls.cw_min;
    return std::min(2 * (cw + 1) - 1, cls.cw_max);
}

int decremented_backoff(const SimParams& params, const NodeConfig& node, const NodeState& state,
                        Nanos delay) {
    Nanos countdown_time = delay;
    if (node.kind == TechnologyKind::SyncGap) countdown_time -= state.sync_wait;
    const std::int64_t slots = ceil_div(countdown_time, params.slot_sigma);
    const std::int64_t decrement = std::max<std::int64_t>(slots - node.cls.p, 0);
    return static_cast<int>(std::max<std::int64_t>(state.backoff - decrement, 0));
}

Simulation::Simulation(SimParams params, std::vector<NodeConfig> nodes)
    : params_(params), nodes_(std::move(nodes)), states_(nodes_.size()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) states_[i].cw = nodes_[i].cls.cw_min;
}

void Simulation::init(BackoffDrawer& drawer) {
    std::vector<int> draws(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        draws[i] = drawer.draw(static_cast<int>(i), nodes_[i].cls.cw_min);
    }
    init(draws);
}

void Simulation::init(std::span<const int> initial_backoffs) {
    assert(initial_backoffs.size() == nodes_.size());
    clock_ = {};
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        states_[i] = NodeState{};
        states_[i].cw = nodes_[i].cls.cw_min;
        assert(initial_backoffs[i] >= 0 && initial_backoffs[i] <= nodes_[i].cls.cw_min);
        states_[i].backoff = initial_backoffs[i];
    }
    collision_rounds_ = 0;
    refresh_sync_waits();
}

RoundPlan Simulation::plan_round() const {
    RoundPlan plan;
    plan.delay = contention_delay(params_, nodes_, states_);
    plan.winners = winner_set(params_, nodes_, states_, plan.delay);
    plan.success = plan.winners.size() == 1;
    return plan;
}

int Simulation::post_round_cw(int node, bool success) const {
    return update_cw(nodes_[node].cls, states_[node].cw, success);
}

RoundOutcome Simulation::apply_round(const RoundPlan& plan, std::span<const int> winner_draws) {
    assert(!plan.winners.empty());
    assert(winner_draws.size() == plan.winners.size());

    Nanos max_occupancy = 0;
    std::vector<Nanos> winner_occupancy;
    winner_occupancy.reserve(plan.winners.size());
    for (int w : plan.winners) {
        const TransmissionProfile profile =
            transmission_profile(params_, nodes_[w], states_[w].sync_wait);
        winner_occupancy.push_back(profile.total);
        max_occupancy = std::max(max_occupancy, profile.total);
        NodeStats& stats = states_[w].stats;
        stats.attempts += 1;
        stats.occupancy += profile.total;
        if (plan.success) {
            stats.successes += 1;
            stats.success_occupancy += profile.total;
            stats.effective += profile.payload;
        } else {
            stats.collisions += 1;
        }
    }
    if (!plan.success) collision_rounds_ += 1;

    const SimClock before = clock_;
    clock_ = advance_clock(clock_, plan.delay, max_occupancy);

    std::size_t draw_index = 0;
    std::size_t winner_index = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const bool is_winner =
            winner_index < plan.winners.size() && plan.winners[winner_index] == static_cast<int>(i);
        if (is_winner) {
            states_[i].cw = update_cw(nodes_[i].cls, states_[i].cw, plan.success);
            const int redraw = winner_draws[draw_index++];
            assert(redraw >= 0 && redraw <= states_[i].cw);
            states_[i].backoff = redraw;
            ++winner_index;
        } else {
            states_[i].backoff = decremented_backoff(params_, nodes_[i], states_[i], plan.delay);
        }
    }
    refresh_sync_waits();

    RoundOutcome outcome;
    outcome.round = before.round;
    outcome.delay = plan.delay;
    outcome.winners = plan.winners;
    outcome.winner_occupancy = std::move(winner_occupancy);
    outcome.success = plan.success;
    outcome.max_occupancy = max_occupancy;
    outcome.airtime = plan.delay + max_occupancy;
    outcome.t_after = clock_.now;
    return outcome;
}

RoundOutcome Simulation::step(BackoffDrawer& drawer) {
    const RoundPlan plan = plan_round();
    std::vector<int> draws(plan.winners.size());
    for (std::size_t i = 0; i < plan.winners.size(); ++i) {
        const int w = plan.winners[i];
        draws[i] = drawer.draw(w, post_round_cw(w, plan.success));
    }
    return apply_round(plan, draws);
}

void Simulation::refresh_sync_waits() {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!is_synchronous(nodes_[i].kind)) continue;
        const Nanos zeta =
            clock_.now + (nodes_[i].cls.p + states_[i].backoff) * params_.slot_sigma;
        states_[i].sync_wait = sync_time({nodes_[i].delta, nodes_[i].phase}, zeta);
    }
}

StatsAccumulator Simulation::stats() const {
    StatsAccumulator acc;
    acc.nodes.reserve(states_.size());
    for (const NodeState& s : states_) acc.nodes.push_back(s.stats);
    acc.total_elapsed = clock_.now;
    acc.rounds = clock_.round;
    acc.collision_rounds = collision_rounds_;
    return acc;
}

StatsAccumulator run_single(const SimParams& params, std::vector<NodeConfig> nodes,
                            const RunConfig& config, const RoundObserver* observer) {
    Rng rng(config.seed);
    const std::vector<Nanos> phases = draw_offsets(nodes, config.sync_mode, rng);
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].phase = phases[i];

    Simulation sim(params, std::move(nodes));
    RngDrawer drawer(rng);
    sim.init(drawer);
    for (std::int64_t n = 0; n < config.rounds; ++n) {
        const RoundOutcome outcome = sim.step(drawer);
        if (observer && *observer) (*observer)(sim, outcome);
    }
    return sim.stats();
}

}  // namespace coexsim
