#include "coexsim/tables.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace coexsim {

const char* to_string(TechnologyKind k) {
    switch (k) {
        case TechnologyKind::RandomAccess: return "wifi";
        case TechnologyKind::SyncRs: return "laa_rs";
        case TechnologyKind::SyncGap: return "nru_gap";
    }
    return "?";
}

const char* to_string(RegSpec spec) {
    switch (spec) {
        case RegSpec::Etsi: return "etsi";
        case RegSpec::ThreeGpp: return "3gpp";
        case RegSpec::Ieee80211: return "ieee80211";
    }
    return "?";
}

namespace {

struct ClassRow {
    int priority;
    int p_dl, p_ul;
    int cw_min;
    int cw_max_dl, cw_max_ul;
    Nanos o_max_dl, o_max_ul;
};

// Channel-access parameters per priority class. ETSI classes run 4 (highest)
// to 1, 3GPP priorities 1 (highest) to 4, 802.11 ids 1..4 = VO, VI, BE, BK.
constexpr std::array<ClassRow, 4> kEtsi = {{
    {4, 1, 2, 3, 7, 7, 2_ms, 2_ms},
    {3, 1, 2, 7, 15, 15, 4_ms, 4_ms},
    {2, 3, 3, 15, 63, 1023, 6_ms, 6_ms},
    {1, 7, 7, 15, 1023, 1023, 6_ms, 6_ms},
}};

constexpr std::array<ClassRow, 4> kThreeGpp = {{
    {1, 1, 2, 3, 7, 7, 2_ms, 2_ms},
    {2, 1, 2, 7, 15, 15, 3_ms, 4_ms},
    {3, 3, 3, 15, 63, 1023, 8_ms, 6_ms},
    {4, 7, 7, 15, 1023, 1023, 8_ms, 6_ms},
}};

constexpr std::array<ClassRow, 4> kIeee80211 = {{
    {1, 1, 2, 3, 7, 7, 2080000, 2080000},      // AC_VO
    {2, 1, 2, 7, 15, 15, 4096000, 4096000},    // AC_VI
    {3, 3, 3, 15, 63, 1023, 2528000, 2528000}, // AC_BE
    {4, 7, 7, 15, 1023, 1023, 2528000, 2528000}, // AC_BK
}};

constexpr Nanos kPpduMaxTime = 5484000;  // 802.11 PHY limit, all access categories

constexpr std::array<Nanos, 8> kSyncSlots = {9_us, 18_us, 36_us, 63_us,
                                             125_us, 250_us, 500_us, 1000_us};

}  // namespace

PriorityClassParams lookup_priority_class(RegSpec spec, int priority, Direction dir,
                                          Ieee80211OmaxMode omax_mode) {
    const std::array<ClassRow, 4>* table = nullptr;
    switch (spec) {
        case RegSpec::Etsi: table = &kEtsi; break;
        case RegSpec::ThreeGpp: table = &kThreeGpp; break;
        case RegSpec::Ieee80211: table = &kIeee80211; break;
    }
    for (const ClassRow& row : *table) {
        if (row.priority != priority) continue;
        const bool dl = dir == Direction::Downlink;
        PriorityClassParams out;
        out.p = dl ? row.p_dl : row.p_ul;
        out.cw_min = row.cw_min;
        out.cw_max = dl ? row.cw_max_dl : row.cw_max_ul;
        out.o_max = dl ? row.o_max_dl : row.o_max_ul;
        if (spec == RegSpec::Ieee80211 && omax_mode == Ieee80211OmaxMode::PpduMaxTime) {
            out.o_max = kPpduMaxTime;
        }
        return out;
    }
    throw std::invalid_argument("unknown priority class " + std::to_string(priority) + " for spec " +
                                to_string(spec));
}

Numerology numerology(int slots_per_subframe) {
    const int n = slots_per_subframe;
    if (n != 1 && n != 2 && n != 4 && n != 8) {
        throw std::invalid_argument("slots per subframe must be 1, 2, 4 or 8, got " +
                                    std::to_string(n));
    }
    Numerology out;
    out.slots_per_subframe = n;
    out.subcarrier_spacing_khz = 15 * n;
    out.symbol_with_cp_ps = 71350000 / n;  // exact: 71.35 us divides by 8 in ps
    out.slot_duration = 1000000 / n;
    return out;
}

std::span<const Nanos> allowed_sync_slots() { return kSyncSlots; }

}  // namespace coexsim
