#include "tsc/agent/nash.hpp"

#include <stdexcept>

namespace tsc::agent {

double epsilon_schedule(long long decision_epochs, long long horizon, double start, double end) {
    if (horizon <= 0 || decision_epochs >= horizon)
        return end;
    if (decision_epochs <= 0)
        return start;
    const double frac = static_cast<double>(decision_epochs) / static_cast<double>(horizon);
    return start - (start - end) * frac;
}

std::vector<double> encode_input(const obs::Observation &observation,
                                 const std::array<int, 4> &neighbor_actions) {
    std::vector<double> input(observation.size() + neighbor_encoding_width(), 0.0);
    std::copy(observation.begin(), observation.end(), input.begin());
    for (int slot = 0; slot < 4; ++slot) {
        const int a = neighbor_actions[static_cast<std::size_t>(slot)];
        if (a < 0)
            continue;
        if (a >= sim::kActionCount)
            throw std::invalid_argument("neighbor action out of range");
        input[observation.size() + static_cast<std::size_t>(slot * sim::kActionCount + a)] = 1.0;
    }
    return input;
}

NashAgent::NashAgent(int row, int col, int observation_dim, std::size_t replay_capacity,
                     Rng &rng)
    : row(row), col(col),
      online(nn::make_q_network(observation_dim + neighbor_encoding_width(), sim::kActionCount,
                                rng)),
      target(online), buffer(replay_capacity) {}

int NashAgent::neighbor_count() const {
    int n = 0;
    for (int s : neighbor_slots)
        if (s >= 0)
            ++n;
    return n;
}

std::array<int, 4> NashAgent::neighbor_actions_from(const game::JointAction &joint) const {
    std::array<int, 4> actions{-1, -1, -1, -1};
    for (int slot = 0; slot < 4; ++slot) {
        const int idx = neighbor_slots[static_cast<std::size_t>(slot)];
        if (idx >= 0)
            actions[static_cast<std::size_t>(slot)] = joint[static_cast<std::size_t>(idx)];
    }
    return actions;
}

std::vector<double> NashAgent::q_values(const obs::Observation &observation,
                                        const std::array<int, 4> &neighbor_actions) const {
    return online.forward(encode_input(observation, neighbor_actions));
}

int NashAgent::best_response(const obs::Observation &observation,
                             const std::array<int, 4> &neighbor_actions) const {
    return game::argmax_lowest(q_values(observation, neighbor_actions));
}

namespace {

// Adapts a pool plus a set of per-agent observations to the game interface.
class PoolView : public game::QProvider {
  public:
    PoolView(const AgentPool &pool, const std::vector<obs::Observation> &observations)
        : pool_(pool), observations_(observations) {
        if (observations_.size() != pool_.size())
            throw std::invalid_argument("one observation per agent required");
    }

    int agent_count() const override { return static_cast<int>(pool_.size()); }
    int action_count(int) const override { return sim::kActionCount; }
    std::vector<double> q_row(int agent, const game::JointAction &joint) const override {
        const NashAgent &a = pool_.agent(static_cast<std::size_t>(agent));
        return a.q_values(observations_[static_cast<std::size_t>(agent)],
                          a.neighbor_actions_from(joint));
    }

  private:
    const AgentPool &pool_;
    const std::vector<obs::Observation> &observations_;
};

} // namespace

AgentPool::AgentPool(int rows, int cols, int observation_dim, std::size_t replay_capacity,
                     TrainSettings settings, Rng &rng)
    : settings_(settings) {
    agents_.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            NashAgent a(r, c, observation_dim, replay_capacity, rng);
            if (r > 0)
                a.neighbor_slots[static_cast<int>(sim::Dir::N)] = (r - 1) * cols + c;
            if (r < rows - 1)
                a.neighbor_slots[static_cast<int>(sim::Dir::S)] = (r + 1) * cols + c;
            if (c < cols - 1)
                a.neighbor_slots[static_cast<int>(sim::Dir::E)] = r * cols + c + 1;
            if (c > 0)
                a.neighbor_slots[static_cast<int>(sim::Dir::W)] = r * cols + c - 1;
            agents_.push_back(std::move(a));
        }
    }
}

game::GameResult AgentPool::play(const std::vector<obs::Observation> &observations,
                                 double epsilon, Rng &rng) const {
    PoolView view(*this, observations);
    return game::fictitious_game(view, epsilon, rng, settings_.j_max);
}

void AgentPool::push_transitions(const std::vector<obs::Observation> &states,
                                 const game::JointAction &actions,
                                 const std::vector<double> &rewards,
                                 const std::vector<obs::Observation> &next_states) {
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        replay::Experience e;
        e.state = states[i];
        e.own_action = actions[i];
        e.neighbor_actions = agents_[i].neighbor_actions_from(actions);
        e.reward = rewards[i];
        e.next_state = next_states[i];
        agents_[i].buffer.push(std::move(e));
    }
}

std::vector<double> AgentPool::targets_for_index(std::size_t sample_index, Rng &rng) const {
    std::vector<obs::Observation> next_states(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i)
        next_states[i] = agents_[i].buffer.at(sample_index).next_state;

    PoolView view(*this, next_states);
    const game::JointAction nash =
        game::fictitious_game(view, 0.0, rng, settings_.j_max).actions;

    std::vector<double> y(agents_.size(), 0.0);
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        const NashAgent &a = agents_[i];
        const auto q = a.target.forward(
            encode_input(next_states[i], a.neighbor_actions_from(nash)));
        y[i] = a.buffer.at(sample_index).reward +
               settings_.gamma * q[static_cast<std::size_t>(nash[i])];
    }
    return y;
}

double AgentPool::train_step(Rng &rng) {
    const std::size_t stored = agents_.front().buffer.size();
    for (const NashAgent &a : agents_)
        if (a.buffer.size() != stored)
            throw std::logic_error("agent buffers must stay in lockstep");

    const auto batch = static_cast<std::size_t>(settings_.batch_size);
    const auto indices = replay::sample_indices(stored, batch, rng);

    std::vector<std::vector<double>> targets(batch);
    for (std::size_t m = 0; m < batch; ++m)
        targets[m] = targets_for_index(indices[m], rng);

    double mean_loss = 0.0;
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        NashAgent &a = agents_[i];
        nn::Gradients grads = a.online.zero_gradients();
        double loss = 0.0;
        for (std::size_t m = 0; m < batch; ++m) {
            const replay::Experience &e = a.buffer.at(indices[m]);
            loss += nn::accumulate_td_gradients(a.online,
                                               encode_input(e.state, e.neighbor_actions),
                                               e.own_action, targets[m][i], grads);
        }
        grads.scale(1.0 / static_cast<double>(batch));
        nn::rmsprop_step(a.online, grads, settings_.learning_rate);
        mean_loss += loss / static_cast<double>(batch);
    }

    ++train_steps_;
    if (train_steps_ % settings_.target_update_interval == 0)
        for (NashAgent &a : agents_)
            nn::copy_parameters(a.online, a.target);

    return mean_loss / static_cast<double>(agents_.size());
}

namespace {

class SingleAgentView : public game::QProvider {
  public:
    SingleAgentView(const NashAgent &agent, const obs::Observation &observation)
        : agent_(agent), observation_(observation) {}

    int agent_count() const override { return 1; }
    int action_count(int) const override { return sim::kActionCount; }
    std::vector<double> q_row(int, const game::JointAction &) const override {
        return agent_.q_values(observation_, {-1, -1, -1, -1});
    }

  private:
    const NashAgent &agent_;
    const obs::Observation &observation_;
};

} // namespace

double compute_target(const NashAgent &agent, const replay::Experience &e, double gamma,
                      Rng &rng, int j_max) {
    if (agent.neighbor_count() != 0)
        throw std::invalid_argument(
            "single-agent compute_target requires an agent without neighbors");
    SingleAgentView view(agent, e.next_state);
    const game::JointAction nash = game::fictitious_game(view, 0.0, rng, j_max).actions;
    const auto q = agent.target.forward(encode_input(e.next_state, {-1, -1, -1, -1}));
    return e.reward + gamma * q[static_cast<std::size_t>(nash[0])];
}

} // namespace tsc::agent
