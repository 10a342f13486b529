#pragma once

#include <deque>
#include <unordered_map>
#include <vector>

#include "tsc/sim/network.hpp"

namespace tsc::sim {

struct Vehicle {
    long long id = -1;
    int lane = -1;
    int cell = -1;
    long long waiting_accrued = 0; // seconds spent not moving, never decreases
    long long spawn_time = 0;      // the scheduled arrival second
    bool moved_this_step = false;
};

// Discrete-time (1 s step) cell simulator. Each cell holds at most one
// vehicle; a vehicle advances one cell per step when the cell ahead was
// free at the start of the step, which gives queues a 1 s start-up lag per
// position. Vehicles travel straight from their entrance to the opposite
// exit. Lanes are resolved in lane-id order, cells front to back.
class TrafficSim {
  public:
    TrafficSim(RoadNetwork network, std::vector<Entrance> demand);

    // Clears vehicles, arrival progress, time and phase plans.
    void reset();

    // One simulated second: adopt latched phases at cycle boundaries, move
    // vehicles, then release due arrivals.
    void tick();

    void move_vehicles();
    void spawn_vehicles();

    // Latches a green-split choice; takes effect at the next cycle boundary.
    void set_phase(int intersection, int action_index);

    SignalState signal(int intersection) const;

    // Stopped vehicles on the incoming lanes, counted contiguously back
    // from each stop cell.
    int queue_length(int intersection) const;
    std::array<int, 4> queues_by_approach(int intersection) const;

    // Vehicles in the network plus vehicles this episode's demand has not
    // yet released. An episode is over when this reaches zero.
    long long active_vehicle_count() const;

    long long now() const { return t_; }
    long long spawned_total() const { return spawned_; }
    long long exited_total() const { return exited_; }
    long long vehicle_count() const { return static_cast<long long>(vehicles_.size()); }
    long long exited_waiting_total() const { return exited_waiting_; }

    const RoadNetwork &network() const { return net_; }
    const std::vector<Entrance> &demand() const { return demand_; }

    const Vehicle *vehicle_at(int lane, int cell) const;
    const std::unordered_map<long long, Vehicle> &vehicles() const { return vehicles_; }

    // Directly inserts a vehicle (scenario construction). Throws if the
    // cell is occupied or out of range.
    long long place_vehicle(int lane, int cell);

  private:
    struct ArrivalState {
        long long scheduled = 0;          // arrivals generated so far
        std::deque<long long> pending;    // due times not yet released
    };

    bool approach_green(const Lane &lane) const;
    void remove_vehicle(long long id, int lane, int cell);

    RoadNetwork net_;
    std::vector<Entrance> demand_;
    std::vector<int> entry_lanes_;   // per demand entry
    std::vector<ArrivalState> arrivals_;
    std::vector<std::vector<long long>> occupancy_; // [lane][cell] -> id or -1
    std::vector<std::vector<long long>> snapshot_;
    std::unordered_map<long long, Vehicle> vehicles_;
    long long t_ = 0;
    long long next_id_ = 0;
    long long spawned_ = 0;
    long long exited_ = 0;
    long long exited_waiting_ = 0;
};

} // namespace tsc::sim
