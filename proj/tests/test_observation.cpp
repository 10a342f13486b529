#include <doctest.h>

#include <stdexcept>

#include "tsc/obs/observation.hpp"

using namespace tsc;
using sim::Dir;

namespace {

sim::TrafficSim grid_1x1() {
    return sim::TrafficSim(sim::build_grid(1, 1, 100.0, 5.0), {});
}

} // namespace

TEST_CASE("empty network encodes to all zeros") {
    auto s = grid_1x1();
    const auto v = obs::encode_observation(s, 0, 10);
    REQUIRE(v.size() == 40);
    for (double x : v)
        CHECK(x == 0.0);
}

TEST_CASE("a vehicle in the north stop cell sets index 0") {
    auto s = grid_1x1();
    const int lane = s.network().entry_lane(Dir::N, 1);
    s.place_vehicle(lane, s.network().lane_cells() - 1);
    const auto v = obs::encode_observation(s, 0, 10);
    CHECK(v[0] == 1.0);
    CHECK(std::count(v.begin(), v.end(), 1.0) == 1);
}

TEST_CASE("saturated approaches encode to all ones") {
    auto s = grid_1x1();
    const int stop = s.network().lane_cells() - 1;
    for (int d = 0; d < 4; ++d) {
        const int lane = s.network().intersections()[0].incoming[d];
        for (int r = 0; r < 10; ++r)
            s.place_vehicle(lane, stop - r);
    }
    const auto v = obs::encode_observation(s, 0, 10);
    for (double x : v)
        CHECK(x == 1.0);
}

TEST_CASE("occupancy outside the observed region is invisible") {
    auto s = grid_1x1();
    const auto before = obs::encode_observation(s, 0, 10);
    const int lane = s.network().entry_lane(Dir::N, 1);
    s.place_vehicle(lane, 0); // 20-cell lane, region covers cells 10..19
    const auto after = obs::encode_observation(s, 0, 10);
    CHECK(before == after);
}

TEST_CASE("encoding is a pure function of simulator state") {
    auto s = grid_1x1();
    s.place_vehicle(s.network().entry_lane(Dir::E, 1), 12);
    CHECK(obs::encode_observation(s, 0, 10) == obs::encode_observation(s, 0, 10));
}

TEST_CASE("encode_observation validates the region size") {
    auto s = grid_1x1();
    CHECK_THROWS_AS(obs::encode_observation(s, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(obs::encode_observation(s, 0, 21), std::invalid_argument);
    CHECK_NOTHROW(obs::encode_observation(s, 0, 20));
}

TEST_CASE("epoch_reward is the drop in waiting") {
    CHECK(obs::epoch_reward(100, 80) == 20.0);
    CHECK(obs::epoch_reward(50, 50) == 0.0);
    CHECK(obs::epoch_reward(30, 45) == -15.0);
}

TEST_CASE("waiting tracker: quiet epoch accrues nothing") {
    auto s = grid_1x1();
    obs::WaitingTracker tracker(1, 10);
    for (int t = 0; t < 40; ++t) {
        s.tick();
        tracker.accumulate(s);
    }
    CHECK(tracker.drain_epoch()[0] == 0);
}

TEST_CASE("waiting tracker: a vehicle stopped the whole epoch accrues 40") {
    // Two-row grid: the middle lane's stop cell vehicle is first blocked by
    // a full exit lane, and by the time that lane drains the light is red.
    sim::TrafficSim s(sim::build_grid(2, 1, 100.0, 5.0), {});
    const auto &bottom = s.network().intersection_at(1, 0);
    const int mid_lane = bottom.incoming[static_cast<int>(Dir::N)];
    const int exit_lane = s.network().lanes()[mid_lane].next_lane;
    const int cells = s.network().lane_cells();

    const long long blocked = s.place_vehicle(mid_lane, cells - 1);
    for (int c = 0; c < cells; ++c)
        s.place_vehicle(exit_lane, c);

    obs::WaitingTracker tracker(2, 10);
    for (int t = 0; t < 40; ++t) {
        s.tick();
        tracker.accumulate(s);
    }
    CHECK(s.vehicles().at(blocked).waiting_accrued == 40);
    const auto w = tracker.drain_epoch();
    CHECK(w[bottom.index] == 40);
    CHECK(w[0] == 0);
}

TEST_CASE("waiting tracker adds per-vehicle in-region waits") {
    auto s = grid_1x1();
    const int lane = s.network().entry_lane(Dir::E, 1);
    const int stop = s.network().lane_cells() - 1;
    const long long first = s.place_vehicle(lane, stop);
    const long long second = s.place_vehicle(lane, stop - 1);

    obs::WaitingTracker tracker(1, 10);
    for (int t = 0; t < 40; ++t) {
        s.tick();
        tracker.accumulate(s);
    }
    // Red holds the pair for 20 s; the follower starts one second later.
    CHECK(s.vehicles().at(first).waiting_accrued == 20);
    CHECK(s.vehicles().at(second).waiting_accrued == 21);
    CHECK(tracker.drain_epoch()[0] == 41);
}
