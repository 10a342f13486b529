#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "tsc/harness/runner.hpp"

namespace {

// Relative outputs land in $OPNDQN_OUT_DIR when it is set.
std::string resolve_output(const std::string &path) {
    if (path.empty())
        return path;
    const char *base = std::getenv("OPNDQN_OUT_DIR");
    if (base == nullptr || *base == '\0' || std::filesystem::path(path).is_absolute())
        return path;
    std::filesystem::create_directories(base);
    return (std::filesystem::path(base) / path).string();
}

std::string default_checkpoint_dir(const std::string &csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension();
    return p.string() + ".ckpt";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"grid traffic-signal control: nash-DQN agents and baselines"};
    app.require_subcommand(1);

    std::string config_source;
    std::string controller;
    long long episodes = -1;
    long long seed = -1;
    std::string out_csv = "metrics.csv";
    std::string checkpoint_out;

    CLI::App *run = app.add_subcommand("run", "train a controller and emit per-episode metrics");
    run->add_option("--config", config_source, "config file path or preset name")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--controller", controller, "opndqn|dqn|maql|fixed");
    run->add_option("--episodes", episodes, "override the episode count");
    run->add_option("--out", out_csv, "metrics CSV path");
    run->add_option("--checkpoint-out", checkpoint_out,
                    "checkpoint directory (default: <out>.ckpt)");

    std::string checkpoint_dir;
    long long eval_episodes = 1;
    long long eval_seed = 1;
    std::string eval_out;

    CLI::App *eval = app.add_subcommand("eval", "greedy rollout of a saved checkpoint");
    eval->add_option("--checkpoint", checkpoint_dir, "checkpoint directory")->required();
    eval->add_option("--config", config_source, "config file path or preset name")->required();
    eval->add_option("--episodes", eval_episodes, "episodes to roll out");
    eval->add_option("--seed", eval_seed, "evaluation seed");
    eval->add_option("--out", eval_out, "CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        tsc::harness::ExperimentConfig cfg = tsc::harness::parse_config(config_source);
        if (!controller.empty())
            cfg.controller = controller;
        if (episodes >= 0)
            cfg.episodes = episodes;
        if (seed >= 0)
            cfg.seed = static_cast<std::uint64_t>(seed);
        // re-validate overrides
        cfg = tsc::harness::parse_config_text(tsc::harness::serialize_config(cfg));

        if (run->parsed()) {
            const std::string csv = resolve_output(out_csv);
            const std::string ckpt = resolve_output(
                checkpoint_out.empty() ? default_checkpoint_dir(out_csv) : checkpoint_out);
            const auto rows = tsc::harness::run_experiment(
                cfg, csv, ckpt, [](const tsc::harness::MetricsRow &row) {
                    std::cout << "episode " << row.episode << "  reward " << row.total_reward
                              << "  avg_waiting " << row.avg_waiting << "  avg_queue "
                              << row.avg_queue << (row.truncated ? "  [truncated]" : "")
                              << std::endl;
                });
            std::cout << "wrote " << rows.size() << " episodes to " << csv << ", checkpoint in "
                      << ckpt << std::endl;
        } else {
            const auto rows = tsc::harness::run_eval(cfg, checkpoint_dir, eval_episodes,
                                                     static_cast<std::uint64_t>(eval_seed),
                                                     resolve_output(eval_out));
            if (eval_out.empty()) {
                tsc::harness::write_csv_header(std::cout);
                for (const auto &row : rows)
                    tsc::harness::write_csv_row(std::cout, row);
            }
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
