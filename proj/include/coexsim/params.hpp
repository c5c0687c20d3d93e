#pragma once

#include <string>

#include "coexsim/time.hpp"

namespace coexsim {

/// Channel-level constants shared by every node in a scenario.
struct SimParams {
    Nanos slot_sigma = 9000;  ///< backoff observation slot
    Nanos sifs = 16000;       ///< idle time preceding every contention
    Nanos sensing_cs = 1000;  ///< carrier-sensing detection delay, < slot/2
};

/// How a node turns a completed LBT countdown into a transmission.
enum class TechnologyKind {
    RandomAccess,  ///< Wi-Fi style: transmit immediately, in-band ACK
    SyncRs,        ///< LAA style: reservation signal until the next sync slot
    SyncGap,       ///< NR-U style: idle gap so the countdown ends on a sync slot
};

constexpr bool is_synchronous(TechnologyKind k) { return k != TechnologyKind::RandomAccess; }

const char* to_string(TechnologyKind k);

/// One row of the channel-access parameter table: fixed observation slots p,
/// contention window range and the maximum channel occupancy time.
struct PriorityClassParams {
    int p = 3;
    int cw_min = 15;
    int cw_max = 63;
    Nanos o_max = 0;
};

/// Static per-node configuration, immutable once the scenario is validated.
struct NodeConfig {
    int id = 0;
    TechnologyKind kind = TechnologyKind::RandomAccess;
    PriorityClassParams cls;
    Nanos delta = 0;          ///< sync slot duration, 0 for random access
    Nanos phase = 0;          ///< sync grid offset in [0, delta)
    Nanos data_duration = 0;  ///< D, on-air data time (<= o_max)
    Nanos ack_duration = 0;   ///< in-band ACK, random access only
};

}  // namespace coexsim
