#include "coexsim/metrics.hpp"

#include <stdexcept>

namespace coexsim {

namespace {

double require_elapsed(const StatsAccumulator& acc) {
    if (acc.total_elapsed <= 0) throw std::domain_error("metrics undefined: no elapsed channel time");
    return static_cast<double>(acc.total_elapsed);
}

}  // namespace

double node_occupancy(const StatsAccumulator& acc, int node) {
    const double elapsed = require_elapsed(acc);
    return static_cast<double>(acc.nodes.at(node).occupancy) / elapsed;
}

SuccessMetrics success_metrics(const StatsAccumulator& acc, int node) {
    const double elapsed = require_elapsed(acc);
    const NodeStats& s = acc.nodes.at(node);
    return {static_cast<double>(s.success_occupancy) / elapsed,
            static_cast<double>(s.effective) / elapsed};
}

std::optional<double> collision_probability(const StatsAccumulator& acc, int node) {
    const NodeStats& s = acc.nodes.at(node);
    if (s.attempts == 0) return std::nullopt;
    return static_cast<double>(s.collisions) / static_cast<double>(s.attempts);
}

double throughput_mbps(double rate_mbps, double s_eff) { return rate_mbps * s_eff; }

TechnologyTotals technology_totals(const StatsAccumulator& acc,
                                   const std::vector<NodeConfig>& nodes) {
    TechnologyTotals totals;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double o = node_occupancy(acc, static_cast<int>(i));
        totals.total += o;
        (is_synchronous(nodes[i].kind) ? totals.laa_nru : totals.wifi) += o;
    }
    return totals;
}

MetricsReport compute_report(const StatsAccumulator& acc, const std::vector<NodeConfig>& nodes,
                             const std::optional<Rates>& rates) {
    const double elapsed = require_elapsed(acc);
    MetricsReport report;
    report.nodes.reserve(nodes.size());

    auto& wifi = report.wifi;
    auto& laa = report.laa_nru;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NodeStats& s = acc.nodes.at(i);
        NodeMetrics m;
        m.occupancy = static_cast<double>(s.occupancy) / elapsed;
        m.s_cot = static_cast<double>(s.success_occupancy) / elapsed;
        m.s_eff = static_cast<double>(s.effective) / elapsed;
        m.collision_prob = collision_probability(acc, static_cast<int>(i));
        report.nodes.push_back(m);

        TechMetrics& tech = is_synchronous(nodes[i].kind) ? laa : wifi;
        tech.occupancy += m.occupancy;
        tech.s_cot += m.s_cot;
        tech.s_eff += m.s_eff;
        tech.attempts += s.attempts;
        tech.successes += s.successes;
        tech.collisions += s.collisions;
    }
    auto finish_tech = [](TechMetrics& tech) {
        if (tech.attempts > 0) {
            tech.collision_prob =
                static_cast<double>(tech.collisions) / static_cast<double>(tech.attempts);
        }
    };
    finish_tech(wifi);
    finish_tech(laa);
    if (rates) {
        wifi.throughput_mbps = throughput_mbps(rates->wifi_mbps, wifi.s_eff);
        laa.throughput_mbps = throughput_mbps(rates->laa_nru_mbps, laa.s_eff);
    }

    report.total.occupancy = wifi.occupancy + laa.occupancy;
    report.total.s_cot = wifi.s_cot + laa.s_cot;
    report.total.s_eff = wifi.s_eff + laa.s_eff;
    report.total.attempts = wifi.attempts + laa.attempts;
    report.total.successes = wifi.successes + laa.successes;
    report.total.collisions = wifi.collisions + laa.collisions;
    if (report.total.attempts > 0) {
        report.total.collision_prob = static_cast<double>(report.total.collisions) /
                                      static_cast<double>(report.total.attempts);
    }
    if (rates && wifi.throughput_mbps && laa.throughput_mbps) {
        report.total.throughput_mbps = *wifi.throughput_mbps + *laa.throughput_mbps;
    }
    return report;
}

}  // namespace coexsim
