#include "tsc/agent/opndqn_controller.hpp"

#include <filesystem>
#include <fstream>

namespace tsc::agent {

OpndqnController::OpndqnController(int rows, int cols, int observation_dim,
                                   std::size_t replay_capacity, TrainSettings train,
                                   ScheduleSettings schedule, Rng &rng)
    : pool_(rows, cols, observation_dim, replay_capacity, train, rng), schedule_(schedule) {}

double OpndqnController::current_epsilon() const {
    return epsilon_schedule(decision_epochs_, schedule_.decay_epochs, schedule_.epsilon_start,
                            schedule_.epsilon_end);
}

std::vector<int> OpndqnController::decide(const std::vector<AgentView> &views, Rng &rng) {
    std::vector<obs::Observation> observations;
    observations.reserve(views.size());
    for (const AgentView &v : views)
        observations.push_back(v.observation);
    const double eps = greedy_ ? 0.0 : current_epsilon();
    auto result = pool_.play(observations, eps, rng);
    if (!greedy_)
        ++decision_epochs_;
    return result.actions;
}

void OpndqnController::feedback(const std::vector<AgentView> &views,
                                const std::vector<int> &actions,
                                const std::vector<double> &rewards,
                                const std::vector<AgentView> &next_views, Rng &rng) {
    if (greedy_)
        return;
    std::vector<obs::Observation> states, next_states;
    states.reserve(views.size());
    next_states.reserve(next_views.size());
    for (const AgentView &v : views)
        states.push_back(v.observation);
    for (const AgentView &v : next_views)
        next_states.push_back(v.observation);
    pool_.push_transitions(states, actions, rewards, next_states);

    const auto batch = static_cast<std::size_t>(pool_.settings().batch_size);
    if (decision_epochs_ > schedule_.pretrain_epochs &&
        pool_.agent(0).buffer.size() > batch)
        pool_.train_step(rng);
}

void OpndqnController::save(const std::string &dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (std::size_t i = 0; i < pool_.size(); ++i) {
        const NashAgent &a = pool_.agent(i);
        const std::string stem =
            dir + "/agent_r" + std::to_string(a.row) + "_c" + std::to_string(a.col);
        nn::save_parameters(a.online, stem + "_online.net");
        nn::save_parameters(a.target, stem + "_target.net");
    }
    std::ofstream meta(dir + "/counters.txt");
    meta << "kind = opndqn\n";
    meta << "decision_epochs = " << decision_epochs_ << "\n";
    meta << "train_steps = " << pool_.train_steps() << "\n";
}

void OpndqnController::load(const std::string &dir) {
    for (std::size_t i = 0; i < pool_.size(); ++i) {
        NashAgent &a = pool_.agent(i);
        const std::string stem =
            dir + "/agent_r" + std::to_string(a.row) + "_c" + std::to_string(a.col);
        nn::FeedForwardNet online = nn::load_parameters(stem + "_online.net");
        nn::FeedForwardNet target = nn::load_parameters(stem + "_target.net");
        nn::copy_parameters(online, a.online);
        nn::copy_parameters(target, a.target);
    }
}

} // namespace tsc::agent
