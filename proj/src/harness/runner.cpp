#include "tsc/harness/runner.hpp"

#include <fstream>

#include "tsc/agent/opndqn_controller.hpp"
#include "tsc/baselines/controllers.hpp"

namespace tsc::harness {

namespace {

std::vector<AgentView> collect_views(const sim::TrafficSim &sim, int region) {
    const auto n = sim.network().intersections().size();
    std::vector<AgentView> views(n);
    for (std::size_t i = 0; i < n; ++i) {
        views[i].observation = obs::encode_observation(sim, static_cast<int>(i), region);
        views[i].approach_queues = sim.queues_by_approach(static_cast<int>(i));
    }
    return views;
}

} // namespace

std::unique_ptr<Controller> make_controller(const ExperimentConfig &cfg, Rng &rng) {
    const int agents = cfg.rows * cfg.cols;
    const int obs_dim = 4 * cfg.observe_cells;
    agent::TrainSettings train;
    train.gamma = cfg.gamma;
    train.learning_rate = cfg.learning_rate;
    train.batch_size = cfg.batch_size;
    train.target_update_interval = cfg.target_update_interval;
    train.j_max = cfg.fictitious_rounds;
    agent::ScheduleSettings schedule;
    schedule.epsilon_start = cfg.epsilon_start;
    schedule.epsilon_end = cfg.epsilon_end;
    schedule.decay_epochs = cfg.epsilon_decay_epochs;
    schedule.pretrain_epochs = cfg.pretrain_epochs;

    if (cfg.controller == "opndqn")
        return std::make_unique<agent::OpndqnController>(cfg.rows, cfg.cols, obs_dim,
                                                         cfg.replay_capacity, train, schedule,
                                                         rng);
    if (cfg.controller == "dqn")
        return std::make_unique<baselines::IndependentDqnController>(
            agents, obs_dim, cfg.replay_capacity, train, schedule, rng);
    if (cfg.controller == "maql")
        return std::make_unique<baselines::MaqlController>(agents, cfg.maql_alpha, cfg.gamma,
                                                           schedule);
    if (cfg.controller == "fixed")
        return std::make_unique<baselines::FixedTimeController>(agents, cfg.fixed_action);
    throw ConfigError("controller must be one of opndqn|dqn|maql|fixed");
}

MetricsRow run_episode(const ExperimentConfig &cfg, sim::TrafficSim &sim, Controller &controller,
                       long long episode_index, Rng &rng, EpisodeTrace *trace,
                       const std::function<void(const sim::TrafficSim &)> &on_tick) {
    const auto agents = sim.network().intersections().size();

    sim.reset();
    obs::WaitingTracker tracker(static_cast<int>(agents), cfg.observe_cells);

    MetricsRow row;
    row.episode = episode_index;

    if (trace) {
        trace->epoch_waiting.assign(agents, {});
        trace->cumulative_waiting.assign(agents, {});
        trace->rewards.assign(agents, {});
    }

    std::vector<long long> cumulative(agents, 0);
    std::vector<long long> prev_cumulative(agents, 0);
    std::vector<AgentView> views = collect_views(sim, cfg.observe_cells);

    long long epochs = 0;
    long long queue_samples_sum = 0;

    while (sim.active_vehicle_count() > 0) {
        if (sim.now() + sim::kCycleSeconds > cfg.max_episode_seconds) {
            row.truncated = true;
            break;
        }

        const std::vector<int> actions = controller.decide(views, rng);
        for (std::size_t i = 0; i < agents; ++i)
            sim.set_phase(static_cast<int>(i), actions[i]);

        for (int s = 0; s < sim::kCycleSeconds; ++s) {
            sim.tick();
            tracker.accumulate(sim);
            if (on_tick)
                on_tick(sim);
        }
        ++epochs;
        for (std::size_t i = 0; i < agents; ++i)
            queue_samples_sum += sim.queue_length(static_cast<int>(i));

        const std::vector<long long> accrued = tracker.drain_epoch();
        std::vector<double> rewards(agents, 0.0);
        for (std::size_t i = 0; i < agents; ++i) {
            prev_cumulative[i] = cumulative[i];
            cumulative[i] += accrued[i];
            // The first epoch only establishes the baseline.
            const double r = epochs == 1
                                 ? 0.0
                                 : obs::epoch_reward(static_cast<double>(prev_cumulative[i]),
                                                     static_cast<double>(cumulative[i]));
            rewards[i] = r;
            row.total_reward += static_cast<long long>(r);
            if (trace) {
                trace->epoch_waiting[i].push_back(accrued[i]);
                trace->cumulative_waiting[i].push_back(cumulative[i]);
                trace->rewards[i].push_back(static_cast<long long>(r));
            }
        }

        std::vector<AgentView> next_views = collect_views(sim, cfg.observe_cells);
        controller.feedback(views, actions, rewards, next_views, rng);
        views = std::move(next_views);
    }

    if (sim.exited_total() > 0)
        row.avg_waiting = static_cast<double>(sim.exited_waiting_total()) /
                          static_cast<double>(sim.exited_total());
    if (epochs > 0)
        row.avg_queue = static_cast<double>(queue_samples_sum) /
                        static_cast<double>(epochs * static_cast<long long>(agents));
    return row;
}

void write_csv_header(std::ostream &out) {
    out << "episode,total_reward,avg_waiting,avg_queue,truncated\n";
}

void write_csv_row(std::ostream &out, const MetricsRow &row) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%.6f,%.6f,%d\n", row.episode, row.total_reward,
                  row.avg_waiting, row.avg_queue, row.truncated ? 1 : 0);
    out << buf;
}

std::vector<MetricsRow> run_experiment(const ExperimentConfig &cfg, const std::string &csv_path,
                                       const std::string &checkpoint_dir,
                                       const std::function<void(const MetricsRow &)> &on_row) {
    Rng rng(cfg.seed);
    auto controller = make_controller(cfg, rng);
    sim::TrafficSim sim(sim::build_grid(cfg.rows, cfg.cols, cfg.edge_length, cfg.cell_length),
                        cfg.demand);

    std::ofstream csv;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv)
            throw std::runtime_error("cannot open CSV output " + csv_path);
        write_csv_header(csv);
        csv.flush();
    }

    std::vector<MetricsRow> rows;
    rows.reserve(static_cast<std::size_t>(cfg.episodes));
    for (long long ep = 1; ep <= cfg.episodes; ++ep) {
        MetricsRow row = run_episode(cfg, sim, *controller, ep, rng);
        if (csv.is_open()) {
            write_csv_row(csv, row);
            csv.flush();
        }
        if (on_row)
            on_row(row);
        rows.push_back(row);
    }

    if (!checkpoint_dir.empty())
        controller->save(checkpoint_dir);
    return rows;
}

std::vector<MetricsRow> run_eval(const ExperimentConfig &cfg, const std::string &checkpoint_dir,
                                 long long episodes, std::uint64_t seed,
                                 const std::string &csv_path) {
    Rng rng(seed);
    auto controller = make_controller(cfg, rng);
    controller->load(checkpoint_dir);
    controller->set_greedy(true);
    sim::TrafficSim sim(sim::build_grid(cfg.rows, cfg.cols, cfg.edge_length, cfg.cell_length),
                        cfg.demand);

    std::ofstream csv;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv)
            throw std::runtime_error("cannot open CSV output " + csv_path);
        write_csv_header(csv);
    }

    std::vector<MetricsRow> rows;
    for (long long ep = 1; ep <= episodes; ++ep) {
        MetricsRow row = run_episode(cfg, sim, *controller, ep, rng);
        if (csv.is_open())
            write_csv_row(csv, row);
        rows.push_back(row);
    }
    return rows;
}

} // namespace tsc::harness
