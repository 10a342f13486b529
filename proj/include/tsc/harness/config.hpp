#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsc/sim/network.hpp"

namespace tsc::harness {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything one experiment needs. Defaults are the published
// hyperparameters plus the 5x5 demand table.
struct ExperimentConfig {
    int rows = 5;
    int cols = 5;
    double edge_length = 120.0;
    double cell_length = 5.0;
    int observe_cells = 10;

    std::vector<sim::Entrance> demand; // filled with the 5x5 table by default

    std::string controller = "opndqn"; // opndqn | dqn | maql | fixed
    long long episodes = 100;
    std::uint64_t seed = 1;

    std::size_t replay_capacity = 20000;
    int batch_size = 64;
    double epsilon_start = 1.0;
    double epsilon_end = 0.01;
    long long epsilon_decay_epochs = 10000;
    long long pretrain_epochs = 2000;
    int target_update_interval = 100;
    double gamma = 0.99;
    double learning_rate = 0.0001;
    int fictitious_rounds = 10;
    long long max_episode_seconds = 20000;
    double maql_alpha = 0.1;
    int fixed_action = 2;

    bool operator==(const ExperimentConfig &) const = default;
};

// The 5x5 demand table: 20 entrances, 19750 vehicles per episode.
std::vector<sim::Entrance> default_demand_5x5();

// Shipped presets, keyed by name ("paper-5x5", "smoke-3x3").
const std::map<std::string, std::string> &builtin_presets();

// Flat `key = value` text. Unknown keys are rejected; missing keys keep
// their defaults. `source` resolves a builtin preset name first, then the
// filesystem.
ExperimentConfig parse_config(const std::string &source);
ExperimentConfig parse_config_text(const std::string &text);
std::string serialize_config(const ExperimentConfig &cfg);

} // namespace tsc::harness
