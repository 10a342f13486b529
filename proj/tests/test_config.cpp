#include <doctest.h>

#include "tsc/harness/config.hpp"

using namespace tsc;
using harness::ConfigError;

TEST_CASE("an empty config carries the published defaults") {
    const auto cfg = harness::parse_config_text("");
    CHECK(cfg.replay_capacity == 20000);
    CHECK(cfg.batch_size == 64);
    CHECK(cfg.epsilon_start == 1.0);
    CHECK(cfg.epsilon_end == 0.01);
    CHECK(cfg.pretrain_epochs == 2000);
    CHECK(cfg.target_update_interval == 100);
    CHECK(cfg.gamma == 0.99);
    CHECK(cfg.learning_rate == 0.0001);

    CHECK(cfg.rows == 5);
    CHECK(cfg.cols == 5);
    CHECK(cfg.controller == "opndqn");
    REQUIRE(cfg.demand.size() == 20);
    long long total = 0;
    for (const auto &e : cfg.demand)
        total += e.ivn;
    CHECK(total == 19750);
}

TEST_CASE("the documented keys all appear in a serialized config") {
    const auto text = harness::serialize_config(harness::parse_config_text(""));
    for (const std::string key :
         {"rows", "cols", "edge_length", "cell_length", "observe_cells", "controller",
          "episodes", "seed", "replay_capacity", "batch_size", "epsilon_start", "epsilon_end",
          "epsilon_decay_epochs", "pretrain_epochs", "target_update_interval", "gamma",
          "learning_rate", "fictitious_rounds", "max_episode_seconds", "maql_alpha",
          "demand.north.1.ivn", "demand.north.1.tfr"}) {
        CAPTURE(key);
        CHECK(text.find(key + " = ") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(harness::parse_config_text("warp_factor = 9\n"), ConfigError);
    CHECK_THROWS_WITH_AS(harness::parse_config_text("gamm = 0.5\n"),
                         doctest::Contains("unknown key 'gamm'"), ConfigError);
}

TEST_CASE("out-of-range and malformed values name the field") {
    CHECK_THROWS_WITH_AS(harness::parse_config_text("gamma = 1.5\n"),
                         doctest::Contains("gamma"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config_text("episodes = many\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config_text("controller = sumo\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config_text("rows = 0\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config_text("learning_rate = -1\n"), ConfigError);
}

TEST_CASE("missing config files are their own error") {
    CHECK_THROWS_WITH_AS(harness::parse_config("/nonexistent/path.cfg"),
                         doctest::Contains("not found"), ConfigError);
}

TEST_CASE("flow rates only accept the 1/k form") {
    const std::string base = "demand.north.1.ivn = 10\ndemand.north.1.tfr = ";
    CHECK(harness::parse_config_text(base + "1/20\n").demand.size() == 1);
    CHECK_THROWS_AS(harness::parse_config_text(base + "2/20\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config_text(base + "0.05\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config_text(base + "1/0\n"), ConfigError);
}

TEST_CASE("demand entries validate against the grid") {
    CHECK_THROWS_WITH_AS(
        harness::parse_config_text(
            "rows = 2\ncols = 2\ndemand.north.3.ivn = 10\ndemand.north.3.tfr = 1/5\n"),
        doctest::Contains("outside the grid"), ConfigError);
    CHECK_THROWS_AS(
        harness::parse_config_text("demand.north.1.ivn = 10\n"), ConfigError); // tfr missing
    CHECK_THROWS_AS(
        harness::parse_config_text("demand.up.1.ivn = 10\ndemand.up.1.tfr = 1/5\n"),
        ConfigError);
}

TEST_CASE("serialization round-trips to an equal config") {
    for (const char *name : {"paper-5x5", "smoke-3x3"}) {
        CAPTURE(name);
        const auto cfg = harness::parse_config(name);
        const auto again = harness::parse_config_text(harness::serialize_config(cfg));
        CHECK(cfg == again);
    }
}

TEST_CASE("builtin presets") {
    REQUIRE(harness::builtin_presets().count("paper-5x5") == 1);
    REQUIRE(harness::builtin_presets().count("smoke-3x3") == 1);

    const auto paper = harness::parse_config("paper-5x5");
    CHECK(paper.rows * paper.cols == 25);
    CHECK(paper.edge_length == 120.0);
    long long total = 0;
    for (const auto &e : paper.demand)
        total += e.ivn;
    CHECK(total == 19750);
    // hyperparameters stay at the published defaults
    CHECK(paper.replay_capacity == 20000);
    CHECK(paper.batch_size == 64);
    CHECK(paper.gamma == 0.99);
    CHECK(paper.learning_rate == 0.0001);

    const auto smoke = harness::parse_config("smoke-3x3");
    CHECK(smoke.rows * smoke.cols == 9);
    REQUIRE(smoke.demand.size() == 12);
    for (const auto &e : smoke.demand)
        CHECK(e.ivn == 60);
    CHECK(smoke.episodes == 150);
}

TEST_CASE("comments and blank lines are ignored") {
    const auto cfg = harness::parse_config_text("# a comment\n\nrows = 3\ncols = 3 # trailing\n");
    CHECK(cfg.rows == 3);
    CHECK(cfg.cols == 3);
}
