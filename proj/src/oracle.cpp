#include "coexsim/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace coexsim {

namespace {

// Upper bound on enumerated leaves: every node redraws at its widest window
// after every round. Computed in doubles; only used for the capacity check.
double worst_case_branches(const std::vector<NodeConfig>& nodes, int horizon) {
    double estimate = 1.0;
    for (const NodeConfig& n : nodes) estimate *= n.cls.cw_min + 1;
    double per_round = 1.0;
    for (const NodeConfig& n : nodes) per_round *= n.cls.cw_max + 1;
    for (int r = 1; r < horizon; ++r) estimate *= per_round;
    return estimate;
}

struct Accumulator {
    explicit Accumulator(std::size_t n) : nodes(n) {}
    std::int64_t branches = 0;
    double mass = 0;
    double round_collision = 0;
    std::vector<ExhaustiveNode> nodes;

    void add_leaf(const Simulation& sim, double prob, int horizon) {
        branches += 1;
        mass += prob;
        const StatsAccumulator acc = sim.stats();
        const double elapsed = static_cast<double>(acc.total_elapsed);
        round_collision += prob * static_cast<double>(acc.collision_rounds) / horizon;
        for (std::size_t i = 0; i < acc.nodes.size(); ++i) {
            const NodeStats& s = acc.nodes[i];
            ExhaustiveNode& e = nodes[i];
            e.attempts += prob * static_cast<double>(s.attempts);
            e.successes += prob * static_cast<double>(s.successes);
            e.collisions += prob * static_cast<double>(s.collisions);
            e.occupancy += prob * static_cast<double>(s.occupancy) / elapsed;
            e.s_cot += prob * static_cast<double>(s.success_occupancy) / elapsed;
            e.s_eff += prob * static_cast<double>(s.effective) / elapsed;
            if (s.attempts > 0) {
                e.collision_prob_given_active +=
                    prob * static_cast<double>(s.collisions) / static_cast<double>(s.attempts);
                e.active_probability += prob;
            }
        }
    }
};

// Visits every vector with component i in [0, radix_limits[i]].
template <typename Fn>
void for_each_draw_vector(const std::vector<int>& radix_limits, Fn&& visit) {
    std::vector<int> draws(radix_limits.size(), 0);
    while (true) {
        visit(draws);
        std::size_t i = 0;
        while (i < draws.size() && ++draws[i] > radix_limits[i]) {
            draws[i] = 0;
            ++i;
        }
        if (i == draws.size()) break;
    }
}

void enumerate_rounds(const Simulation& sim, double prob, int round, int horizon,
                      Accumulator& acc) {
    if (round == horizon) {
        acc.add_leaf(sim, prob, horizon);
        return;
    }
    const RoundPlan plan = sim.plan_round();
    if (round == horizon - 1) {
        // The redraw after the final round cannot reach any recorded
        // statistic, so the draw branches are identical leaves: take one
        // representative and keep the full probability.
        Simulation next = sim;
        const std::vector<int> zeros(plan.winners.size(), 0);
        next.apply_round(plan, zeros);
        enumerate_rounds(next, prob, round + 1, horizon, acc);
        return;
    }
    std::vector<int> windows(plan.winners.size());
    double branch_prob = prob;
    for (std::size_t i = 0; i < plan.winners.size(); ++i) {
        windows[i] = sim.post_round_cw(plan.winners[i], plan.success);
        branch_prob /= windows[i] + 1;
    }
    for_each_draw_vector(windows, [&](const std::vector<int>& draws) {
        Simulation next = sim;
        next.apply_round(plan, draws);
        enumerate_rounds(next, branch_prob, round + 1, horizon, acc);
    });
}

}  // namespace

ExhaustiveReport exhaustive_metrics(const SimParams& params, const std::vector<NodeConfig>& nodes,
                                    int horizon, const ExhaustiveLimits& limits) {
    if (nodes.empty()) throw std::invalid_argument("enumeration requires at least one node");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (static_cast<int>(nodes.size()) > limits.max_nodes) {
        throw std::runtime_error("enumeration refused: more than " +
                                 std::to_string(limits.max_nodes) + " nodes");
    }
    bool doubling = false;
    for (const NodeConfig& n : nodes) {
        if (n.cls.cw_max > limits.max_cw) {
            throw std::runtime_error("enumeration refused: contention window above " +
                                     std::to_string(limits.max_cw));
        }
        doubling = doubling || n.cls.cw_min != n.cls.cw_max;
    }
    if (doubling && horizon > limits.max_horizon_with_doubling) {
        throw std::runtime_error("enumeration refused: horizon above " +
                                 std::to_string(limits.max_horizon_with_doubling) +
                                 " with CW doubling enabled");
    }
    const double estimate = worst_case_branches(nodes, horizon);
    if (estimate > static_cast<double>(limits.max_branches)) {
        std::ostringstream os;
        os << "enumeration refused: up to " << estimate << " branches, limit is "
           << limits.max_branches;
        throw std::runtime_error(os.str());
    }

    Accumulator acc(nodes.size());
    const Simulation base(params, nodes);
    std::vector<int> initial_windows(nodes.size());
    double initial_prob = 1.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        initial_windows[i] = nodes[i].cls.cw_min;
        initial_prob /= initial_windows[i] + 1;
    }
    for_each_draw_vector(initial_windows, [&](const std::vector<int>& draws) {
        Simulation sim = base;
        sim.init(draws);
        enumerate_rounds(sim, initial_prob, 0, horizon, acc);
    });

    ExhaustiveReport report;
    report.branches = acc.branches;
    report.probability_mass = acc.mass;
    report.round_collision_prob = acc.round_collision;
    report.nodes = std::move(acc.nodes);
    for (ExhaustiveNode& e : report.nodes) {
        if (e.active_probability > 0) e.collision_prob_given_active /= e.active_probability;
    }
    return report;
}

std::vector<std::vector<double>> two_node_chain(int cw) {
    if (cw < 0) throw std::invalid_argument("contention window must be >= 0");
    const int w = cw;
    const double width = w + 1;
    std::vector<std::vector<double>> chain(w + 1, std::vector<double>(w + 1, 0.0));
    // State 0: both nodes draw fresh. A tie collides (back to 0); otherwise
    // the loser carries |b1 - b2|.
    chain[0][0] = 1.0 / width;
    for (int d = 1; d <= w; ++d) chain[0][d] = 2.0 * (width - d) / (width * width);
    // State r: one node carries residual r, the other draws fresh u.
    // u == r collides; u < r leaves the carrier with r - u; u > r makes the
    // fresh node the new carrier with u - r.
    for (int r = 1; r <= w; ++r) {
        chain[r][0] = 1.0 / width;
        for (int d = 1; d <= w; ++d) {
            double ways = 0;
            if (d <= r) ways += 1;      // u = r - d
            if (d <= w - r) ways += 1;  // u = r + d
            chain[r][d] = ways / width;
        }
    }
    return chain;
}

TwoNodeStationary two_node_stationary(int cw) {
    const auto chain = two_node_chain(cw);
    const int n = static_cast<int>(chain.size());

    Eigen::MatrixXd transition(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) transition(i, j) = chain[i][j];

    // pi^T P = pi^T with the normalization sum(pi) = 1 replacing one equation.
    Eigen::MatrixXd system = transition.transpose() - Eigen::MatrixXd::Identity(n, n);
    system.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    const Eigen::VectorXd pi = system.fullPivLu().solve(rhs);

    // Every transition into state 0 is a collision round.
    double q = 0;
    for (int s = 0; s < n; ++s) q += pi(s) * chain[s][0];

    TwoNodeStationary out;
    out.round_collision_probability = q;
    // Per round: a collision gives both nodes one colliding attempt, a
    // success gives one node one clean attempt, so per-attempt C = 2q/(1+q).
    out.collision_probability = 2.0 * q / (1.0 + q);
    out.distribution.assign(pi.data(), pi.data() + n);
    return out;
}

}  // namespace coexsim
