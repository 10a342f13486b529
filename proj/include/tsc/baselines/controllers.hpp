#pragma once

#include <array>
#include <vector>

#include "tsc/agent/opndqn_controller.hpp"
#include "tsc/controller.hpp"
#include "tsc/nn/network.hpp"
#include "tsc/replay/replay.hpp"

namespace tsc::baselines {

// Emits the same split every epoch; the non-learning floor.
class FixedTimeController : public Controller {
  public:
    explicit FixedTimeController(int agents, int action_index = 2);
    std::vector<int> decide(const std::vector<AgentView> &views, Rng &rng) override;
    void feedback(const std::vector<AgentView> &, const std::vector<int> &,
                  const std::vector<double> &, const std::vector<AgentView> &, Rng &) override {}
    std::string kind() const override { return "fixed"; }
    void save(const std::string &dir) const override;
    void load(const std::string &dir) override {}

  private:
    int agents_;
    int action_;
};

// y = r + gamma * max_a Q_target(next_state, a)
double independent_dqn_target(const nn::FeedForwardNet &target_net,
                              const replay::Experience &e, double gamma);

// Plain per-intersection DQN: the observation is the whole input, the
// target bootstraps through the agent's own max. No neighbor information
// anywhere.
class IndependentDqnController : public Controller {
  public:
    IndependentDqnController(int agents, int observation_dim, std::size_t replay_capacity,
                             agent::TrainSettings train, agent::ScheduleSettings schedule,
                             Rng &rng);

    std::vector<int> decide(const std::vector<AgentView> &views, Rng &rng) override;
    void feedback(const std::vector<AgentView> &views, const std::vector<int> &actions,
                  const std::vector<double> &rewards, const std::vector<AgentView> &next_views,
                  Rng &rng) override;
    std::string kind() const override { return "dqn"; }
    void save(const std::string &dir) const override;
    void load(const std::string &dir) override;

    long long decision_epochs() const { return decision_epochs_; }

  private:
    struct DqnAgent {
        nn::FeedForwardNet online;
        nn::FeedForwardNet target;
        replay::ReplayBuffer buffer;
    };

    agent::TrainSettings train_;
    agent::ScheduleSettings schedule_;
    std::vector<DqnAgent> agents_;
    long long decision_epochs_ = 0;
    long long train_steps_ = 0;
};

// Queue-length bin per approach: 0-2, 3-5, 6-10, >10.
int queue_bin(int queue);
// Four approach bins packed base-4, first approach most significant.
int discretize_state(const std::array<int, 4> &approach_queues);

constexpr int kMaqlStates = 256;

// Q[s,a] += alpha * (r + gamma * max_a' Q[s',a'] - Q[s,a])
void maql_update(std::vector<std::array<double, sim::kActionCount>> &table, int state,
                 int action, double reward, int next_state, double alpha, double gamma);

// Tabular Q-learning over the binned queue state, one table per
// intersection, no information sharing.
class MaqlController : public Controller {
  public:
    MaqlController(int agents, double alpha, double gamma, agent::ScheduleSettings schedule);

    std::vector<int> decide(const std::vector<AgentView> &views, Rng &rng) override;
    void feedback(const std::vector<AgentView> &views, const std::vector<int> &actions,
                  const std::vector<double> &rewards, const std::vector<AgentView> &next_views,
                  Rng &rng) override;
    std::string kind() const override { return "maql"; }
    void save(const std::string &dir) const override;
    void load(const std::string &dir) override;

    const std::vector<std::array<double, sim::kActionCount>> &table(std::size_t i) const {
        return tables_[i];
    }

  private:
    double alpha_;
    double gamma_;
    agent::ScheduleSettings schedule_;
    std::vector<std::vector<std::array<double, sim::kActionCount>>> tables_;
    long long decision_epochs_ = 0;
};

} // namespace tsc::baselines
