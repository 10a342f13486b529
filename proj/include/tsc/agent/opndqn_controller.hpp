#pragma once

#include <memory>

#include "tsc/agent/nash.hpp"
#include "tsc/controller.hpp"

namespace tsc::agent {

struct ScheduleSettings {
    double epsilon_start = 1.0;
    double epsilon_end = 0.01;
    long long decay_epochs = 10000;
    long long pretrain_epochs = 2000;
};

class OpndqnController : public Controller {
  public:
    OpndqnController(int rows, int cols, int observation_dim, std::size_t replay_capacity,
                     TrainSettings train, ScheduleSettings schedule, Rng &rng);

    std::vector<int> decide(const std::vector<AgentView> &views, Rng &rng) override;
    void feedback(const std::vector<AgentView> &views, const std::vector<int> &actions,
                  const std::vector<double> &rewards, const std::vector<AgentView> &next_views,
                  Rng &rng) override;
    std::string kind() const override { return "opndqn"; }
    void save(const std::string &dir) const override;
    void load(const std::string &dir) override;

    AgentPool &pool() { return pool_; }
    long long decision_epochs() const { return decision_epochs_; }
    double current_epsilon() const;

  private:
    AgentPool pool_;
    ScheduleSettings schedule_;
    long long decision_epochs_ = 0;
};

} // namespace tsc::agent
