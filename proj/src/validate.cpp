#include "coexsim/validate.hpp"

#include <algorithm>
#include <sstream>

#include "coexsim/tables.hpp"

namespace coexsim {

namespace {

bool is_pow2_minus_1(int v) { return v > 0 && ((v + 1) & v) == 0; }

bool reachable_by_doubling(int cw_min, int cw_max) {
    int w = cw_min;
    while (w < cw_max) w = 2 * (w + 1) - 1;
    return w == cw_max;
}

std::string node_prefix(const NodeConfig& n) {
    std::ostringstream os;
    os << "node " << n.id << ": ";
    return os.str();
}

}  // namespace

std::vector<std::string> validate_sim_params(const SimParams& p) {
    std::vector<std::string> errors;
    if (p.slot_sigma <= 0) errors.push_back("slot duration must be positive");
    if (p.sifs <= 0) errors.push_back("SIFS must be positive");
    if (p.sensing_cs <= 0) errors.push_back("carrier-sensing time must be positive");
    else if (2 * p.sensing_cs >= p.slot_sigma)
        errors.push_back("carrier-sensing time must be below half a backoff slot");
    return errors;
}

std::vector<std::string> validate_priority_class(const PriorityClassParams& cls) {
    std::vector<std::string> errors;
    if (cls.p < 1) errors.push_back("inter-frame space number p must be >= 1");
    if (cls.cw_min <= 0 || cls.cw_min > cls.cw_max)
        errors.push_back("contention window range requires 0 < cw_min <= cw_max");
    if (!is_pow2_minus_1(cls.cw_min)) errors.push_back("cw_min must be of the form 2^k - 1");
    if (!is_pow2_minus_1(cls.cw_max)) errors.push_back("cw_max must be of the form 2^k - 1");
    if (is_pow2_minus_1(cls.cw_min) && is_pow2_minus_1(cls.cw_max) && cls.cw_min <= cls.cw_max &&
        !reachable_by_doubling(cls.cw_min, cls.cw_max))
        errors.push_back("cw_max must be reachable from cw_min by doubling");
    if (cls.o_max <= 0) errors.push_back("o_max must be positive");
    return errors;
}

std::vector<std::string> validate_nodes(const SimParams& params,
                                        const std::vector<NodeConfig>& nodes) {
    std::vector<std::string> errors = validate_sim_params(params);
    if (nodes.empty()) {
        errors.push_back("scenario needs at least one node");
        return errors;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NodeConfig& n = nodes[i];
        const std::string at = node_prefix(n);
        if (n.id != static_cast<int>(i))
            errors.push_back(at + "ids must be dense and in order");
        for (const std::string& e : validate_priority_class(n.cls)) errors.push_back(at + e);
        if (n.data_duration <= 0) errors.push_back(at + "data duration must be positive");
        if (n.data_duration > n.cls.o_max)
            errors.push_back(at + "data duration exceeds the o_max channel occupancy limit");
        if (n.ack_duration < 0) errors.push_back(at + "ack duration must be >= 0");
        if (n.kind == TechnologyKind::RandomAccess) {
            if (n.delta != 0) errors.push_back(at + "random-access nodes have no sync slot (delta must be 0)");
            if (n.phase != 0) errors.push_back(at + "random-access nodes have no grid phase");
        } else {
            const auto slots = allowed_sync_slots();
            if (std::find(slots.begin(), slots.end(), n.delta) == slots.end())
                errors.push_back(at + "sync slot duration is not an allowed value");
            if (n.phase < 0 || (n.delta > 0 && n.phase >= n.delta))
                errors.push_back(at + "grid phase must lie in [0, delta)");
            if (n.ack_duration != 0)
                errors.push_back(at + "synchronous nodes are acknowledged out of band (ack must be 0)");
            // A reservation signal longer than the data window would leave a
            // negative payload; the model covers D >= delta only.
            if (n.kind == TechnologyKind::SyncRs && n.data_duration < n.delta)
                errors.push_back(at + "reservation-signal nodes need data duration >= delta");
        }
    }
    return errors;
}

}  // namespace coexsim
