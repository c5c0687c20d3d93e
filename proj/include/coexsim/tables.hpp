#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "coexsim/params.hpp"

namespace coexsim {

/// Which regulatory/standard document a priority class is read from.
enum class RegSpec { Etsi, ThreeGpp, Ieee80211 };

enum class Direction { Downlink, Uplink };

/// For IEEE 802.11 the priority ids map to access categories:
/// 1 = AC_VO, 2 = AC_VI, 3 = AC_BE, 4 = AC_BK.
/// ETSI classes run 4 (highest) .. 1, 3GPP priorities 1 (highest) .. 4.
enum class Ieee80211OmaxMode {
    TxopLimit,    ///< per-AC TXOP limit
    PpduMaxTime,  ///< 5.484 ms PHY maximum, reachable with aggregation
};

/// Channel-access parameters for one (spec, priority class, direction) cell.
/// Throws std::invalid_argument for a combination outside the table.
PriorityClassParams lookup_priority_class(RegSpec spec, int priority, Direction dir,
                                          Ieee80211OmaxMode omax_mode = Ieee80211OmaxMode::TxopLimit);

const char* to_string(RegSpec spec);

/// NR user-traffic timing derived from the slots-per-subframe setting.
struct Numerology {
    int slots_per_subframe = 1;
    int subcarrier_spacing_khz = 15;
    std::int64_t symbol_with_cp_ps = 71350000;  ///< OFDM symbol incl. CP, picoseconds (71.35/n_s us)
    Nanos slot_duration = 1000000;
};

/// Valid slots_per_subframe values are 1, 2, 4, 8; anything else throws.
Numerology numerology(int slots_per_subframe);

/// Permitted synchronization slot durations (slot- and mini-slot-based scheduling).
std::span<const Nanos> allowed_sync_slots();

}  // namespace coexsim
