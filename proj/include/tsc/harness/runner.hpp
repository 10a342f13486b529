#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "tsc/controller.hpp"
#include "tsc/harness/config.hpp"
#include "tsc/obs/observation.hpp"
#include "tsc/sim/simulator.hpp"

namespace tsc::harness {

struct MetricsRow {
    long long episode = 0;
    long long total_reward = 0; // integer seconds by construction
    double avg_waiting = 0.0;   // per completed vehicle
    double avg_queue = 0.0;     // mean over epochs and intersections
    bool truncated = false;
};

// Per-agent epoch series, recorded when a test wants to check the books.
struct EpisodeTrace {
    std::vector<std::vector<long long>> epoch_waiting;       // [agent][epoch] accrual
    std::vector<std::vector<long long>> cumulative_waiting;  // [agent][epoch] running total
    std::vector<std::vector<long long>> rewards;             // [agent][epoch]
};

std::unique_ptr<Controller> make_controller(const ExperimentConfig &cfg, Rng &rng);

// One full demand run: every 40 s epoch the controller picks a joint
// action, the split latches at the cycle boundary, the simulator advances
// 40 seconds with per-second arrivals, and each agent receives the change
// in its cumulative observed waiting as reward (the first epoch sets the
// baseline and pays zero). Ends when no vehicles remain or at the step cap.
MetricsRow run_episode(const ExperimentConfig &cfg, sim::TrafficSim &sim, Controller &controller,
                       long long episode_index, Rng &rng, EpisodeTrace *trace = nullptr,
                       const std::function<void(const sim::TrafficSim &)> &on_tick = {});

// CSV column set: episode,total_reward,avg_waiting,avg_queue,truncated
void write_csv_header(std::ostream &out);
void write_csv_row(std::ostream &out, const MetricsRow &row);

// Runs cfg.episodes episodes, appending one CSV row per episode when
// csv_path is non-empty and writing a checkpoint at the end when
// checkpoint_dir is non-empty.
std::vector<MetricsRow> run_experiment(const ExperimentConfig &cfg,
                                       const std::string &csv_path = "",
                                       const std::string &checkpoint_dir = "",
                                       const std::function<void(const MetricsRow &)> &on_row = {});

// Greedy rollout of a saved checkpoint: no exploration, no learning.
std::vector<MetricsRow> run_eval(const ExperimentConfig &cfg, const std::string &checkpoint_dir,
                                 long long episodes, std::uint64_t seed,
                                 const std::string &csv_path = "");

} // namespace tsc::harness
