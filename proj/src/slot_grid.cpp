#include "coexsim/slot_grid.hpp"

#include <cassert>

namespace coexsim {

Nanos sync_time(const SlotGrid& grid, Nanos zeta) {
    assert(grid.delta > 0);
    assert(grid.phase >= 0 && grid.phase < grid.delta);
    assert(zeta >= 0);
    if (zeta <= grid.phase) return grid.phase - zeta;
    const Nanos past = (zeta - grid.phase) % grid.delta;
    return past == 0 ? 0 : grid.delta - past;
}

const char* to_string(SyncMode mode) {
    return mode == SyncMode::Synchronized ? "synchronized" : "desynchronized";
}

std::vector<Nanos> draw_offsets(const std::vector<NodeConfig>& nodes, SyncMode mode, Rng& rng) {
    std::vector<Nanos> phases(nodes.size(), 0);
    if (mode == SyncMode::Synchronized) return phases;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!is_synchronous(nodes[i].kind)) continue;
        phases[i] = rng.uniform(nodes[i].delta - 1);
    }
    return phases;
}

}  // namespace coexsim
