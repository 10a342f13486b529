#pragma once

#include <array>
#include <span>
#include <vector>

#include "tsc/game/fictitious.hpp"
#include "tsc/nn/network.hpp"
#include "tsc/obs/observation.hpp"
#include "tsc/replay/replay.hpp"
#include "tsc/rng.hpp"
#include "tsc/sim/network.hpp"

namespace tsc::agent {

// Linear decay from `start` to `end` over the first `horizon` decision
// epochs, constant afterwards.
double epsilon_schedule(long long decision_epochs, long long horizon, double start = 1.0,
                        double end = 0.01);

// Network input layout: the observation followed by a one-hot(5) block per
// neighbor slot (N,S,E,W); absent neighbors stay all-zero.
std::vector<double> encode_input(const obs::Observation &observation,
                                 const std::array<int, 4> &neighbor_actions);

constexpr int neighbor_encoding_width() { return 4 * sim::kActionCount; }

// One intersection's learner: online and target networks over the
// observation + neighbor-action encoding, plus its own replay memory.
struct NashAgent {
    int row = 0, col = 0;
    std::array<int, 4> neighbor_slots{-1, -1, -1, -1}; // pool index per side
    nn::FeedForwardNet online;
    nn::FeedForwardNet target;
    replay::ReplayBuffer buffer;

    NashAgent(int row, int col, int observation_dim, std::size_t replay_capacity, Rng &rng);

    int neighbor_count() const;
    std::array<int, 4> neighbor_actions_from(const game::JointAction &joint) const;

    std::vector<double> q_values(const obs::Observation &observation,
                                 const std::array<int, 4> &neighbor_actions) const;
    int best_response(const obs::Observation &observation,
                      const std::array<int, 4> &neighbor_actions) const;
};

struct TrainSettings {
    double gamma = 0.99;
    double learning_rate = 1e-4;
    int batch_size = 64;
    int target_update_interval = 100;
    int j_max = 10;
};

// All agents of one experiment. Agents are indexed row-major like the
// intersections; the pool owns the shared training step because targets
// need a joint game across everyone's stored next states.
class AgentPool {
  public:
    AgentPool(int rows, int cols, int observation_dim, std::size_t replay_capacity,
              TrainSettings settings, Rng &rng);

    std::size_t size() const { return agents_.size(); }
    NashAgent &agent(std::size_t i) { return agents_[i]; }
    const NashAgent &agent(std::size_t i) const { return agents_[i]; }
    const TrainSettings &settings() const { return settings_; }
    long long train_steps() const { return train_steps_; }

    // Joint action for the current epoch (Algorithm 1 over the online nets).
    game::GameResult play(const std::vector<obs::Observation> &observations, double epsilon,
                          Rng &rng) const;

    void push_transitions(const std::vector<obs::Observation> &states,
                          const game::JointAction &actions, const std::vector<double> &rewards,
                          const std::vector<obs::Observation> &next_states);

    // One gradient update per agent on a shared set of sampled indices.
    // Because every agent stores exactly one transition per epoch, equal
    // indices refer to the same epoch everywhere, which is what makes the
    // stored joint next-state game well defined. Returns the mean loss.
    double train_step(Rng &rng);

    // y = r + gamma * Q_target(next_state, nash actions); the nash actions
    // come from re-running the game on the stored next states with
    // epsilon = 0 over the online networks.
    std::vector<double> targets_for_index(std::size_t sample_index, Rng &rng) const;

  private:
    friend class PoolGameView;
    TrainSettings settings_;
    std::vector<NashAgent> agents_;
    long long train_steps_ = 0;
};

// Degenerate single-agent form: with no neighbors the game collapses to one
// argmax over the agent's own online Q-row.
double compute_target(const NashAgent &agent, const replay::Experience &e, double gamma,
                      Rng &rng, int j_max = 10);

} // namespace tsc::agent
