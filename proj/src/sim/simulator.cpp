#include "tsc/sim/simulator.hpp"

#include <cassert>
#include <stdexcept>

namespace tsc::sim {

TrafficSim::TrafficSim(RoadNetwork network, std::vector<Entrance> demand)
    : net_(std::move(network)), demand_(std::move(demand)) {
    entry_lanes_.reserve(demand_.size());
    for (const Entrance &e : demand_) {
        if (e.ivn <= 0)
            throw std::invalid_argument("entrance ivn must be positive");
        if (e.tfr_k < 1)
            throw std::invalid_argument("entrance tfr must be 1/k with k >= 1");
        entry_lanes_.push_back(net_.entry_lane(e.side, e.index));
    }
    reset();
}

void TrafficSim::reset() {
    vehicles_.clear();
    occupancy_.assign(net_.lanes().size(),
                      std::vector<long long>(static_cast<std::size_t>(net_.lane_cells()), -1));
    snapshot_ = occupancy_;
    arrivals_.assign(demand_.size(), ArrivalState{});
    for (Intersection &i : net_.intersections()) {
        i.plan = SignalPhasePlan{};
        i.pending_ns_green = i.plan.ns_green;
    }
    t_ = 0;
    next_id_ = 0;
    spawned_ = 0;
    exited_ = 0;
    exited_waiting_ = 0;
}

void TrafficSim::set_phase(int intersection, int action_index) {
    if (action_index < 0 || action_index >= kActionCount)
        throw std::invalid_argument("signal action index out of range");
    auto &i = net_.intersections().at(static_cast<std::size_t>(intersection));
    i.pending_ns_green = kGreenChoices[static_cast<std::size_t>(action_index)];
}

SignalState TrafficSim::signal(int intersection) const {
    return signal_state(net_.intersections().at(static_cast<std::size_t>(intersection)).plan, t_);
}

bool TrafficSim::approach_green(const Lane &lane) const {
    const SignalState s = signal(lane.downstream);
    return lane.ns_axis() ? s == SignalState::NSGreen : s == SignalState::EWGreen;
}

void TrafficSim::remove_vehicle(long long id, int lane, int cell) {
    occupancy_[static_cast<std::size_t>(lane)][static_cast<std::size_t>(cell)] = -1;
    auto it = vehicles_.find(id);
    exited_waiting_ += it->second.waiting_accrued;
    vehicles_.erase(it);
    ++exited_;
}

void TrafficSim::tick() {
    for (Intersection &i : net_.intersections()) {
        long long phase = (t_ - i.plan.cycle_offset) % kCycleSeconds;
        if (phase < 0)
            phase += kCycleSeconds;
        if (phase == 0)
            i.plan.ns_green = i.pending_ns_green;
    }
    move_vehicles();
    spawn_vehicles();
    ++t_;
}

void TrafficSim::move_vehicles() {
    snapshot_ = occupancy_;
    const int last = net_.lane_cells() - 1;

    for (const Lane &lane : net_.lanes()) {
        auto &occ = occupancy_[static_cast<std::size_t>(lane.id)];
        const auto lane_idx = static_cast<std::size_t>(lane.id);
        for (int cell = last; cell >= 0; --cell) {
            const long long id = occ[static_cast<std::size_t>(cell)];
            if (id < 0)
                continue;
            Vehicle &v = vehicles_[id];
            v.moved_this_step = false;

            if (cell == last) {
                if (lane.downstream < 0) {
                    // Boundary exit: nothing downstream ever blocks it.
                    remove_vehicle(id, lane.id, cell);
                    continue;
                }
                if (approach_green(lane)) {
                    auto &next_occ = occupancy_[static_cast<std::size_t>(lane.next_lane)];
                    auto &next_snap = snapshot_[static_cast<std::size_t>(lane.next_lane)];
                    if (next_snap[0] < 0 && next_occ[0] < 0) {
                        occ[static_cast<std::size_t>(cell)] = -1;
                        next_occ[0] = id;
                        v.lane = lane.next_lane;
                        v.cell = 0;
                        v.moved_this_step = true;
                    }
                }
            } else {
                const auto ahead = static_cast<std::size_t>(cell + 1);
                if (snapshot_[lane_idx][ahead] < 0 && occ[ahead] < 0) {
                    occ[static_cast<std::size_t>(cell)] = -1;
                    occ[ahead] = id;
                    v.cell = cell + 1;
                    v.moved_this_step = true;
                }
            }
            if (!v.moved_this_step)
                v.waiting_accrued += 1;
        }
    }
}

void TrafficSim::spawn_vehicles() {
    for (std::size_t e = 0; e < demand_.size(); ++e) {
        const Entrance &ent = demand_[e];
        ArrivalState &st = arrivals_[e];
        if (st.scheduled < ent.ivn && t_ % ent.tfr_k == 0) {
            st.pending.push_back(t_);
            ++st.scheduled;
        }
        if (st.pending.empty())
            continue;
        auto &occ = occupancy_[static_cast<std::size_t>(entry_lanes_[e])];
        if (occ[0] >= 0)
            continue;
        const long long due = st.pending.front();
        st.pending.pop_front();
        Vehicle v;
        v.id = next_id_++;
        v.lane = entry_lanes_[e];
        v.cell = 0;
        v.spawn_time = due;
        v.waiting_accrued = t_ - due; // time spent queued outside the grid
        occ[0] = v.id;
        vehicles_.emplace(v.id, v);
        ++spawned_;
    }
}

std::array<int, 4> TrafficSim::queues_by_approach(int intersection) const {
    const Intersection &i = net_.intersections().at(static_cast<std::size_t>(intersection));
    std::array<int, 4> queues{0, 0, 0, 0};
    for (int d = 0; d < 4; ++d) {
        const int lane = i.incoming[static_cast<std::size_t>(d)];
        if (lane < 0)
            continue;
        const auto &occ = occupancy_[static_cast<std::size_t>(lane)];
        for (int cell = net_.lane_cells() - 1; cell >= 0; --cell) {
            const long long id = occ[static_cast<std::size_t>(cell)];
            if (id < 0)
                break;
            if (vehicles_.at(id).moved_this_step)
                break;
            ++queues[static_cast<std::size_t>(d)];
        }
    }
    return queues;
}

int TrafficSim::queue_length(int intersection) const {
    const auto q = queues_by_approach(intersection);
    return q[0] + q[1] + q[2] + q[3];
}

long long TrafficSim::active_vehicle_count() const {
    long long remaining = 0;
    for (std::size_t e = 0; e < demand_.size(); ++e) {
        remaining += demand_[e].ivn - arrivals_[e].scheduled; // not yet due
        remaining += static_cast<long long>(arrivals_[e].pending.size());
    }
    return remaining + vehicle_count();
}

const Vehicle *TrafficSim::vehicle_at(int lane, int cell) const {
    const long long id =
        occupancy_.at(static_cast<std::size_t>(lane)).at(static_cast<std::size_t>(cell));
    if (id < 0)
        return nullptr;
    return &vehicles_.at(id);
}

long long TrafficSim::place_vehicle(int lane, int cell) {
    auto &occ = occupancy_.at(static_cast<std::size_t>(lane));
    auto &slot = occ.at(static_cast<std::size_t>(cell));
    if (slot >= 0)
        throw std::invalid_argument("cell already occupied");
    Vehicle v;
    v.id = next_id_++;
    v.lane = lane;
    v.cell = cell;
    v.spawn_time = t_;
    slot = v.id;
    vehicles_.emplace(v.id, v);
    ++spawned_;
    return v.id;
}

} // namespace tsc::sim
