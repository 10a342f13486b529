#include "tsc/baselines/controllers.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "tsc/game/fictitious.hpp"

namespace tsc::baselines {

FixedTimeController::FixedTimeController(int agents, int action_index)
    : agents_(agents), action_(action_index) {
    if (action_index < 0 || action_index >= sim::kActionCount)
        throw std::invalid_argument("fixed-time action index out of range");
}

std::vector<int> FixedTimeController::decide(const std::vector<AgentView> &, Rng &) {
    return std::vector<int>(static_cast<std::size_t>(agents_), action_);
}

void FixedTimeController::save(const std::string &dir) const {
    std::filesystem::create_directories(dir);
    std::ofstream meta(dir + "/counters.txt");
    meta << "kind = fixed\n";
    meta << "action = " << action_ << "\n";
}

double independent_dqn_target(const nn::FeedForwardNet &target_net, const replay::Experience &e,
                              double gamma) {
    const auto q = target_net.forward(e.next_state);
    return e.reward + gamma * *std::max_element(q.begin(), q.end());
}

IndependentDqnController::IndependentDqnController(int agents, int observation_dim,
                                                   std::size_t replay_capacity,
                                                   agent::TrainSettings train,
                                                   agent::ScheduleSettings schedule, Rng &rng)
    : train_(train), schedule_(schedule) {
    agents_.reserve(static_cast<std::size_t>(agents));
    for (int i = 0; i < agents; ++i) {
        DqnAgent a{nn::make_q_network(observation_dim, sim::kActionCount, rng),
                   nn::FeedForwardNet{}, replay::ReplayBuffer(replay_capacity)};
        a.target = a.online;
        agents_.push_back(std::move(a));
    }
}

std::vector<int> IndependentDqnController::decide(const std::vector<AgentView> &views, Rng &rng) {
    const double eps = greedy_ ? 0.0
                               : agent::epsilon_schedule(decision_epochs_, schedule_.decay_epochs,
                                                         schedule_.epsilon_start,
                                                         schedule_.epsilon_end);
    std::vector<int> actions(agents_.size(), 0);
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        if (uniform_real(rng) < eps) {
            actions[i] = uniform_int(rng, 0, sim::kActionCount - 1);
        } else {
            actions[i] = game::argmax_lowest(agents_[i].online.forward(views[i].observation));
        }
    }
    if (!greedy_)
        ++decision_epochs_;
    return actions;
}

void IndependentDqnController::feedback(const std::vector<AgentView> &views,
                                        const std::vector<int> &actions,
                                        const std::vector<double> &rewards,
                                        const std::vector<AgentView> &next_views, Rng &rng) {
    if (greedy_)
        return;
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        replay::Experience e;
        e.state = views[i].observation;
        e.own_action = actions[i];
        e.reward = rewards[i];
        e.next_state = next_views[i].observation;
        agents_[i].buffer.push(std::move(e));
    }

    const auto batch = static_cast<std::size_t>(train_.batch_size);
    if (decision_epochs_ <= schedule_.pretrain_epochs || agents_[0].buffer.size() <= batch)
        return;

    for (auto &a : agents_) {
        const auto indices = replay::sample_indices(a.buffer.size(), batch, rng);
        nn::Gradients grads = a.online.zero_gradients();
        for (std::size_t m : indices) {
            const replay::Experience &e = a.buffer.at(m);
            const double y = independent_dqn_target(a.target, e, train_.gamma);
            nn::accumulate_td_gradients(a.online, e.state, e.own_action, y, grads);
        }
        grads.scale(1.0 / static_cast<double>(batch));
        nn::rmsprop_step(a.online, grads, train_.learning_rate);
    }
    ++train_steps_;
    if (train_steps_ % train_.target_update_interval == 0)
        for (auto &a : agents_)
            nn::copy_parameters(a.online, a.target);
}

void IndependentDqnController::save(const std::string &dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        const std::string stem = dir + "/agent_" + std::to_string(i);
        nn::save_parameters(agents_[i].online, stem + "_online.net");
        nn::save_parameters(agents_[i].target, stem + "_target.net");
    }
    std::ofstream meta(dir + "/counters.txt");
    meta << "kind = dqn\n";
    meta << "decision_epochs = " << decision_epochs_ << "\n";
    meta << "train_steps = " << train_steps_ << "\n";
}

void IndependentDqnController::load(const std::string &dir) {
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        const std::string stem = dir + "/agent_" + std::to_string(i);
        nn::FeedForwardNet online = nn::load_parameters(stem + "_online.net");
        nn::FeedForwardNet target = nn::load_parameters(stem + "_target.net");
        nn::copy_parameters(online, agents_[i].online);
        nn::copy_parameters(target, agents_[i].target);
    }
}

int queue_bin(int queue) {
    if (queue <= 2)
        return 0;
    if (queue <= 5)
        return 1;
    if (queue <= 10)
        return 2;
    return 3;
}

int discretize_state(const std::array<int, 4> &approach_queues) {
    int index = 0;
    for (int q : approach_queues)
        index = index * 4 + queue_bin(q);
    return index;
}

void maql_update(std::vector<std::array<double, sim::kActionCount>> &table, int state,
                 int action, double reward, int next_state, double alpha, double gamma) {
    auto &row = table.at(static_cast<std::size_t>(state));
    const auto &next_row = table.at(static_cast<std::size_t>(next_state));
    const double best_next = *std::max_element(next_row.begin(), next_row.end());
    double &q = row[static_cast<std::size_t>(action)];
    q += alpha * (reward + gamma * best_next - q);
}

MaqlController::MaqlController(int agents, double alpha, double gamma,
                               agent::ScheduleSettings schedule)
    : alpha_(alpha), gamma_(gamma), schedule_(schedule) {
    tables_.assign(static_cast<std::size_t>(agents),
                   std::vector<std::array<double, sim::kActionCount>>(
                       kMaqlStates, std::array<double, sim::kActionCount>{}));
}

std::vector<int> MaqlController::decide(const std::vector<AgentView> &views, Rng &rng) {
    const double eps = greedy_ ? 0.0
                               : agent::epsilon_schedule(decision_epochs_, schedule_.decay_epochs,
                                                         schedule_.epsilon_start,
                                                         schedule_.epsilon_end);
    std::vector<int> actions(tables_.size(), 0);
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        if (uniform_real(rng) < eps) {
            actions[i] = uniform_int(rng, 0, sim::kActionCount - 1);
        } else {
            const auto &row = tables_[i][static_cast<std::size_t>(
                discretize_state(views[i].approach_queues))];
            actions[i] = game::argmax_lowest(row);
        }
    }
    if (!greedy_)
        ++decision_epochs_;
    return actions;
}

void MaqlController::feedback(const std::vector<AgentView> &views, const std::vector<int> &actions,
                              const std::vector<double> &rewards,
                              const std::vector<AgentView> &next_views, Rng &) {
    if (greedy_)
        return;
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        maql_update(tables_[i], discretize_state(views[i].approach_queues), actions[i],
                    rewards[i], discretize_state(next_views[i].approach_queues), alpha_, gamma_);
    }
}

void MaqlController::save(const std::string &dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        std::ofstream out(dir + "/agent_" + std::to_string(i) + ".qtable");
        out.precision(17);
        for (const auto &row : tables_[i]) {
            for (std::size_t a = 0; a < row.size(); ++a)
                out << (a ? " " : "") << row[a];
            out << "\n";
        }
    }
    std::ofstream meta(dir + "/counters.txt");
    meta << "kind = maql\n";
    meta << "decision_epochs = " << decision_epochs_ << "\n";
}

void MaqlController::load(const std::string &dir) {
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        std::ifstream in(dir + "/agent_" + std::to_string(i) + ".qtable");
        if (!in)
            throw std::runtime_error("missing q-table in checkpoint: agent " +
                                     std::to_string(i));
        for (auto &row : tables_[i])
            for (double &v : row)
                in >> v;
        if (!in)
            throw std::runtime_error("corrupt q-table in checkpoint: agent " +
                                     std::to_string(i));
    }
}

} // namespace tsc::baselines
