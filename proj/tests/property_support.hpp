#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coexsim/engine.hpp"
#include "coexsim/metrics.hpp"
#include "coexsim/tables.hpp"
#include "coexsim/validate.hpp"

// Randomized-scenario invariant machinery shared by the property tests and
// the acceptance suite. Every per-round claim is checked against a direct
// evaluation of the access rules, independent of the engine's bookkeeping.

namespace coexsim::test {

struct RandomScenario {
    SimParams params;
    std::vector<NodeConfig> nodes;
    SyncMode mode = SyncMode::Desynchronized;
};

inline RandomScenario random_scenario(Rng& rng) {
    RandomScenario sc;
    const int n = 1 + static_cast<int>(rng.uniform(5));
    sc.mode = rng.uniform(1) == 0 ? SyncMode::Synchronized : SyncMode::Desynchronized;
    const auto slots = allowed_sync_slots();
    for (int i = 0; i < n; ++i) {
        const RegSpec spec = static_cast<RegSpec>(rng.uniform(2));
        const int priority = 1 + static_cast<int>(rng.uniform(3));
        NodeConfig node;
        node.id = i;
        node.cls = lookup_priority_class(spec, priority, Direction::Downlink);
        switch (rng.uniform(2)) {
            case 0:
                node.kind = TechnologyKind::RandomAccess;
                node.ack_duration = rng.uniform(100) * 1000;
                node.data_duration = 1000 + rng.uniform(node.cls.o_max - 1000);
                break;
            case 1:
                node.kind = TechnologyKind::SyncGap;
                node.delta = slots[static_cast<std::size_t>(rng.uniform(7))];
                node.data_duration = 1000 + rng.uniform(node.cls.o_max - 1000);
                break;
            default:
                node.kind = TechnologyKind::SyncRs;
                node.delta = slots[static_cast<std::size_t>(rng.uniform(7))];
                node.data_duration = node.delta + rng.uniform(node.cls.o_max - node.delta);
                break;
        }
        sc.nodes.push_back(node);
    }
    return sc;
}

inline bool in_doubling_chain(const PriorityClassParams& cls, int cw) {
    for (int w = cls.cw_min; w <= cls.cw_max; w = 2 * (w + 1) - 1) {
        if (w == cw) return true;
        if (w == cls.cw_max) break;
    }
    return false;
}

/// Runs `rounds` rounds with a seeded drawer while checking every model
/// invariant. Returns an empty string on success, otherwise a description
/// of the first violation.
inline std::string check_invariants(const RandomScenario& sc, std::int64_t rounds,
                                    std::uint64_t seed) {
    std::ostringstream err;
    const auto fail = [&](auto&&... parts) {
        ((err << parts), ...);
        return err.str();
    };

    const std::vector<std::string> validation = validate_nodes(sc.params, sc.nodes);
    if (!validation.empty()) return fail("scenario invalid: ", validation.front());

    Rng rng(seed);
    std::vector<NodeConfig> nodes = sc.nodes;
    const std::vector<Nanos> phases = draw_offsets(nodes, sc.mode, rng);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        nodes[i].phase = phases[i];
        if (!is_synchronous(nodes[i].kind) && phases[i] != 0)
            return fail("random-access node drew a phase");
        if (is_synchronous(nodes[i].kind) && (phases[i] < 0 || phases[i] >= nodes[i].delta))
            return fail("phase outside [0, delta)");
        if (sc.mode == SyncMode::Synchronized && phases[i] != 0)
            return fail("synchronized mode drew a nonzero phase");
    }

    Simulation sim(sc.params, nodes);
    RngDrawer drawer(rng);
    sim.init(drawer);

    const Nanos sigma = sc.params.slot_sigma;
    std::int64_t success_total = 0;

    for (std::int64_t round = 0; round < rounds; ++round) {
        const std::vector<NodeState> pre = sim.states();
        const Nanos t_before = sim.clock().now;

        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (pre[i].backoff < 0 || pre[i].backoff > pre[i].cw)
                return fail("round ", round, ": backoff outside [0, cw]");
            if (!in_doubling_chain(nodes[i].cls, pre[i].cw))
                return fail("round ", round, ": cw not in the doubling chain");
            if (is_synchronous(nodes[i].kind)) {
                if (pre[i].sync_wait < 0 || pre[i].sync_wait >= nodes[i].delta)
                    return fail("round ", round, ": sync wait outside [0, delta)");
            } else if (pre[i].sync_wait != 0) {
                return fail("round ", round, ": random-access node has a sync wait");
            }
        }

        // Direct evaluation of the access rules, independent of the engine.
        std::vector<Nanos> key(nodes.size());
        Nanos min_key = -1;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            key[i] = (nodes[i].cls.p + pre[i].backoff) * sigma;
            if (nodes[i].kind == TechnologyKind::SyncGap) key[i] += pre[i].sync_wait;
            if (min_key < 0 || key[i] < min_key) min_key = key[i];
        }

        const RoundPlan plan = sim.plan_round();
        if (plan.delay != min_key) return fail("round ", round, ": delay != min access offset");
        std::vector<int> expect;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (key[i] - min_key < sc.params.sensing_cs) expect.push_back(static_cast<int>(i));
        }
        if (plan.winners != expect) return fail("round ", round, ": winner set mismatch");
        if (plan.winners.empty()) return fail("round ", round, ": empty winner set");

        std::vector<int> draws;
        for (int w : plan.winners) {
            const int cw_next = sim.post_round_cw(w, plan.success);
            if (!in_doubling_chain(nodes[w].cls, cw_next))
                return fail("round ", round, ": post-round cw not in chain");
            draws.push_back(drawer.draw(w, cw_next));
            if (draws.back() < 0 || draws.back() > cw_next)
                return fail("round ", round, ": redraw outside [0, cw]");
        }

        for (int w : plan.winners) {
            if (nodes[w].kind == TechnologyKind::SyncGap) {
                if ((t_before + key[w] - nodes[w].phase) % nodes[w].delta != 0)
                    return fail("round ", round, ": gap transmission start off the grid");
            }
            if (nodes[w].kind == TechnologyKind::SyncRs) {
                const Nanos rs = pre[w].sync_wait;
                if (rs >= nodes[w].delta) return fail("round ", round, ": RS as long as delta");
                if ((t_before + key[w] + rs - nodes[w].phase) % nodes[w].delta != 0)
                    return fail("round ", round, ": RS payload start off the grid");
            }
        }

        const RoundOutcome outcome = sim.apply_round(plan, draws);
        if (outcome.t_after <= t_before) return fail("round ", round, ": clock did not advance");
        if (outcome.airtime != outcome.t_after - t_before)
            return fail("round ", round, ": airtime != clock step");
        if (outcome.delay != plan.delay) return fail("round ", round, ": outcome delay mismatch");
        if (outcome.winner_occupancy.size() != outcome.winners.size())
            return fail("round ", round, ": per-winner occupancy list mismatch");
        Nanos longest = 0;
        for (std::size_t w = 0; w < outcome.winners.size(); ++w) {
            const TransmissionProfile profile = transmission_profile(
                sc.params, nodes[outcome.winners[w]], pre[outcome.winners[w]].sync_wait);
            if (outcome.winner_occupancy[w] != profile.total)
                return fail("round ", round, ": winner occupancy != transmission profile");
            longest = std::max(longest, outcome.winner_occupancy[w]);
        }
        if (outcome.airtime != outcome.delay + longest)
            return fail("round ", round, ": airtime != delay + longest transmission");

        std::int64_t successes_now = 0;
        for (const NodeState& s : sim.states()) successes_now += s.stats.successes;
        if (successes_now - success_total > 1)
            return fail("round ", round, ": more than one success in a round");
        success_total = successes_now;
    }

    const StatsAccumulator acc = sim.stats();
    if (acc.rounds != rounds) return fail("round counter mismatch");
    double o_total = 0;
    double s_cot_total = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NodeStats& s = acc.nodes[i];
        if (s.collisions != s.attempts - s.successes) return fail("collisions != attempts - successes");
        if (s.successes > s.attempts) return fail("successes above attempts");
        if (!(s.effective <= s.success_occupancy && s.success_occupancy <= s.occupancy))
            return fail("occupancy ordering violated");
        o_total += node_occupancy(acc, static_cast<int>(i));
        const SuccessMetrics sm = success_metrics(acc, static_cast<int>(i));
        s_cot_total += sm.s_cot;

        // Constant-overhead technologies keep payload/occupancy at exactly D/P.
        if (nodes[i].kind != TechnologyKind::SyncRs && s.successes > 0) {
            const TransmissionProfile profile = transmission_profile(sc.params, nodes[i], 0);
            const __int128 lhs = static_cast<__int128>(s.effective) * profile.total;
            const __int128 rhs = static_cast<__int128>(s.success_occupancy) * profile.payload;
            if (lhs != rhs) return fail("payload share drifted from D/P");
        }
    }
    if (o_total > 1.0 && acc.collision_rounds == 0)
        return fail("total occupancy above 1 without any collision");
    if (s_cot_total > 1.0 + 1e-12) return fail("successful airtime above total time");
    return {};
}

}  // namespace coexsim::test
