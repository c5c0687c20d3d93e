#pragma once

#include <vector>

#include "coexsim/params.hpp"
#include "coexsim/rng.hpp"

namespace coexsim {

/// Synchronization grid of one scheduled node: transmissions may start only
/// at {phase + m * delta, m >= 0}.
struct SlotGrid {
    Nanos delta = 0;
    Nanos phase = 0;
};

/// Time from zeta to the next grid point at or after it.
/// Result is in [0, delta) and is 0 exactly when zeta sits on the grid.
Nanos sync_time(const SlotGrid& grid, Nanos zeta);

enum class SyncMode {
    Synchronized,    ///< all scheduled nodes share the phase-0 grid
    Desynchronized,  ///< independent per-node offsets, uniform over [0, delta)
};

const char* to_string(SyncMode mode);

/// Per-node grid offsets, drawn once per run. Random-access nodes always get
/// phase 0. Consumes one draw per synchronous node, in node-id order.
std::vector<Nanos> draw_offsets(const std::vector<NodeConfig>& nodes, SyncMode mode, Rng& rng);

}  // namespace coexsim
