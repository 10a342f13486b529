#pragma once

#include <array>
#include <string>
#include <vector>

#include "tsc/obs/observation.hpp"
#include "tsc/rng.hpp"

namespace tsc {

// What an agent gets to see at an epoch boundary.
struct AgentView {
    obs::Observation observation;
    std::array<int, 4> approach_queues{0, 0, 0, 0};
};

// One action index per intersection, chosen each 40 s epoch. All
// controllers drive the same environment loop; swapping one for another
// changes nothing on the simulator side.
class Controller {
  public:
    virtual ~Controller() = default;

    virtual std::vector<int> decide(const std::vector<AgentView> &views, Rng &rng) = 0;

    // Completed-epoch feedback: rewards and successor views for the actions
    // returned by the previous decide().
    virtual void feedback(const std::vector<AgentView> &views, const std::vector<int> &actions,
                          const std::vector<double> &rewards,
                          const std::vector<AgentView> &next_views, Rng &rng) = 0;

    virtual std::string kind() const = 0;

    // Greedy evaluation mode: no exploration, no learning.
    virtual void set_greedy(bool greedy) { greedy_ = greedy; }
    bool greedy() const { return greedy_; }

    virtual void save(const std::string &dir) const = 0;
    virtual void load(const std::string &dir) = 0;

  protected:
    bool greedy_ = false;
};

} // namespace tsc
