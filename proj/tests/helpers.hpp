#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "coexsim/engine.hpp"
#include "coexsim/metrics.hpp"
#include "coexsim/tables.hpp"

namespace coexsim::test {

inline PriorityClassParams be_class(Nanos o_max = 8_ms) { return {3, 15, 63, o_max}; }

inline PriorityClassParams fixed_cw_class(int cw, Nanos o_max = 8_ms) {
    return {3, cw, cw, o_max};
}

inline NodeConfig wifi_node(int id, Nanos data = 5400_us, Nanos ack = 50_us,
                            PriorityClassParams cls = {3, 15, 63, 5484000}) {
    NodeConfig n;
    n.id = id;
    n.kind = TechnologyKind::RandomAccess;
    n.cls = cls;
    n.data_duration = data;
    n.ack_duration = ack;
    return n;
}

inline NodeConfig gap_node(int id, Nanos delta, Nanos data = 6000_us,
                           PriorityClassParams cls = {3, 15, 63, 8_ms}, Nanos phase = 0) {
    NodeConfig n;
    n.id = id;
    n.kind = TechnologyKind::SyncGap;
    n.cls = cls;
    n.delta = delta;
    n.phase = phase;
    n.data_duration = data;
    return n;
}

inline NodeConfig rs_node(int id, Nanos delta, Nanos data = 6000_us,
                          PriorityClassParams cls = {3, 15, 63, 8_ms}, Nanos phase = 0) {
    NodeConfig n = gap_node(id, delta, data, cls, phase);
    n.kind = TechnologyKind::SyncRs;
    return n;
}

inline double seed_mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double seed_stderr(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = seed_mean(v);
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace coexsim::test
