#include "tsc/obs/observation.hpp"

#include <stdexcept>

namespace tsc::obs {

Observation encode_observation(const sim::TrafficSim &sim, int intersection,
                               int cells_per_approach) {
    const auto &net = sim.network();
    if (cells_per_approach < 1 || cells_per_approach > net.lane_cells())
        throw std::invalid_argument("cells_per_approach must be in [1, lane length]");

    const auto &inter = net.intersections().at(static_cast<std::size_t>(intersection));
    Observation v(static_cast<std::size_t>(4 * cells_per_approach), 0.0);
    const int stop = net.lane_cells() - 1;
    for (int d = 0; d < 4; ++d) {
        const int lane = inter.incoming[static_cast<std::size_t>(d)];
        for (int r = 0; r < cells_per_approach; ++r) {
            if (sim.vehicle_at(lane, stop - r) != nullptr)
                v[static_cast<std::size_t>(d * cells_per_approach + r)] = 1.0;
        }
    }
    return v;
}

double epoch_reward(double waiting_prev, double waiting_curr) {
    return waiting_prev - waiting_curr;
}

WaitingTracker::WaitingTracker(int intersections, int cells_per_approach)
    : region_(cells_per_approach), accrued_(static_cast<std::size_t>(intersections), 0) {}

void WaitingTracker::accumulate(const sim::TrafficSim &sim) {
    const auto &net = sim.network();
    const int stop = net.lane_cells() - 1;
    for (std::size_t i = 0; i < accrued_.size(); ++i) {
        const auto &inter = net.intersections()[i];
        long long stopped = 0;
        for (int d = 0; d < 4; ++d) {
            const int lane = inter.incoming[static_cast<std::size_t>(d)];
            for (int r = 0; r < region_; ++r) {
                const sim::Vehicle *v = sim.vehicle_at(lane, stop - r);
                if (v != nullptr && !v->moved_this_step)
                    ++stopped;
            }
        }
        accrued_[i] += stopped;
    }
}

std::vector<long long> WaitingTracker::drain_epoch() {
    std::vector<long long> out = accrued_;
    std::fill(accrued_.begin(), accrued_.end(), 0);
    return out;
}

void WaitingTracker::reset() {
    std::fill(accrued_.begin(), accrued_.end(), 0);
}

} // namespace tsc::obs
