#pragma once

#include <vector>

#include "tsc/sim/simulator.hpp"

namespace tsc::obs {

// Binary occupancy of the R cells nearest the stop line on each of the four
// incoming approaches, flattened in (N, S, E, W) order with the stop cell
// first. Length 4*R.
using Observation = std::vector<double>;

Observation encode_observation(const sim::TrafficSim &sim, int intersection, int cells_per_approach);

// r_T = W_{T-1} - W_T
double epoch_reward(double waiting_prev, double waiting_curr);

// Accumulates waiting seconds inside each agent's observed region. Call
// accumulate() once per simulation second after the vehicles have moved;
// drain_epoch() hands back the totals gathered since the previous drain.
class WaitingTracker {
  public:
    WaitingTracker(int intersections, int cells_per_approach);

    void accumulate(const sim::TrafficSim &sim);
    std::vector<long long> drain_epoch();
    void reset();

  private:
    int region_ = 0;
    std::vector<long long> accrued_;
};

} // namespace tsc::obs
