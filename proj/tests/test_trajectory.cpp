#include <doctest.h>

#include "coexsim/engine.hpp"
#include "helpers.hpp"

using namespace coexsim;
using namespace coexsim::test;

// Three rounds over one node of each technology with scripted draws; every
// intermediate value below was computed by hand from the access rules.
//
//   wifi: p=3, D=100us, ACK=50us            -> P = 182us
//   rs:   p=3, delta=125us, phi=0, D=150us  -> P = 166us
//   gap:  p=3, delta=63us, phi=9us, D=90us  -> P = 106us
TEST_CASE("golden three-round trajectory across all technologies") {
    std::vector<NodeConfig> nodes = {wifi_node(0, 100_us, 50_us, be_class()),
                                     rs_node(1, 125_us, 150_us),
                                     gap_node(2, 63_us, 90_us, be_class(), 9_us)};
    Simulation sim(SimParams{}, nodes);
    // initial backoffs {5, 7, 2}; then winner redraws {4, 6}, {11}, {9}
    ScriptedDrawer drawer({5, 7, 2, 4, 6, 11, 9});
    sim.init(drawer);

    // t=0: rs counts down to 90us, next 125us boundary -> wait 35us;
    //      gap counts down to 45us, grid {9 + 63k}us -> 72us boundary
    CHECK(sim.states()[1].sync_wait == 35_us);
    CHECK(sim.states()[2].sync_wait == 27_us);

    // round 0: wifi ready at 72us, rs at 90us, gap at 45+27=72us
    //          -> wifi and gap collide at 72us
    const RoundOutcome r0 = sim.step(drawer);
    CHECK_FALSE(r0.success);
    CHECK(r0.winners == std::vector<int>{0, 2});
    CHECK(r0.delay == 72_us);
    CHECK(r0.winner_occupancy == std::vector<Nanos>{182_us, 106_us});
    CHECK(r0.t_after == 254_us);
    CHECK(sim.states()[0].cw == 31);
    CHECK(sim.states()[2].cw == 31);
    CHECK(sim.states()[0].backoff == 4);
    CHECK(sim.states()[2].backoff == 6);
    CHECK(sim.states()[1].backoff == 2);  // ceil(72/9) - 3 = 5 observed slots
    CHECK(sim.states()[1].sync_wait == 76_us);  // countdown ends 299us, grid 375us
    CHECK(sim.states()[2].sync_wait == 52_us);  // countdown ends 335us, grid 387us

    // round 1: rs ready at 45us beats wifi (63us) and gap (133us); its 76us
    //          reservation signal leaves 74us of payload
    const RoundOutcome r1 = sim.step(drawer);
    CHECK(r1.success);
    CHECK(r1.winners == std::vector<int>{1});
    CHECK(r1.delay == 45_us);
    CHECK(r1.t_after == 465_us);
    CHECK(sim.states()[1].stats.effective == 74_us);
    CHECK(sim.states()[1].stats.success_occupancy == 166_us);
    CHECK(sim.states()[1].cw == 15);
    CHECK(sim.states()[1].backoff == 11);
    CHECK(sim.states()[0].backoff == 2);  // 5 - 3 fixed slots observed
    CHECK(sim.states()[2].backoff == 6);  // gap still pending, frozen
    CHECK(sim.states()[1].sync_wait == 34_us);
    CHECK(sim.states()[2].sync_wait == 30_us);

    // round 2: wifi at 45us wins over rs (126us) and gap (111us)
    const RoundOutcome r2 = sim.step(drawer);
    CHECK(r2.success);
    CHECK(r2.winners == std::vector<int>{0});
    CHECK(r2.t_after == 692_us);
    CHECK(sim.states()[0].backoff == 9);
    CHECK(sim.states()[0].cw == 15);
    CHECK(sim.states()[1].backoff == 9);
    CHECK(sim.states()[2].backoff == 6);  // ceil((45-30)/9) = 2 slots, below p
    CHECK(sim.states()[1].sync_wait == 75_us);
    CHECK(sim.states()[2].sync_wait == 55_us);

    const StatsAccumulator acc = sim.stats();
    CHECK(acc.rounds == 3);
    CHECK(acc.collision_rounds == 1);
    CHECK(acc.total_elapsed == 692_us);
    CHECK(acc.nodes[0] == NodeStats{2, 1, 1, 364_us, 182_us, 100_us});
    CHECK(acc.nodes[1] == NodeStats{1, 1, 0, 166_us, 166_us, 74_us});
    CHECK(acc.nodes[2] == NodeStats{1, 0, 1, 106_us, 0, 0});
}
