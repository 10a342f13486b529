#include "tsc/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tsc::harness {

namespace {

std::string trim(const std::string &s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

long long parse_int(const std::string &key, const std::string &value) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("malformed integer for key '" + key + "': " + value);
    return out;
}

double parse_real(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return out;
    } catch (const std::exception &) {
        throw ConfigError("malformed number for key '" + key + "': " + value);
    }
}

// Flow rates are written as 1/k vehicles per second.
int parse_tfr(const std::string &key, const std::string &value) {
    const auto slash = value.find('/');
    if (slash == std::string::npos || trim(value.substr(0, slash)) != "1")
        throw ConfigError("key '" + key + "' must be a rate of the form 1/k, got: " + value);
    const long long k = parse_int(key, trim(value.substr(slash + 1)));
    if (k < 1)
        throw ConfigError("key '" + key + "' needs k >= 1 in 1/k");
    return static_cast<int>(k);
}

sim::Dir parse_side(const std::string &key, const std::string &name) {
    if (name == "north")
        return sim::Dir::N;
    if (name == "south")
        return sim::Dir::S;
    if (name == "east")
        return sim::Dir::E;
    if (name == "west")
        return sim::Dir::W;
    throw ConfigError("unknown entrance side in key '" + key + "'");
}

struct DemandDraft {
    bool has_ivn = false, has_tfr = false;
    long long ivn = 0;
    int tfr_k = 1;
};

} // namespace

std::vector<sim::Entrance> default_demand_5x5() {
    using sim::Dir;
    return {
        {Dir::N, 1, 1000, 20}, {Dir::N, 2, 1000, 10}, {Dir::N, 3, 1100, 15},
        {Dir::N, 4, 1050, 20}, {Dir::N, 5, 900, 10},
        {Dir::S, 1, 1100, 15}, {Dir::S, 2, 900, 15},  {Dir::S, 3, 900, 20},
        {Dir::S, 4, 1000, 10}, {Dir::S, 5, 950, 20},
        {Dir::E, 1, 1050, 20}, {Dir::E, 2, 1000, 15}, {Dir::E, 3, 950, 15},
        {Dir::E, 4, 1000, 20}, {Dir::E, 5, 850, 10},
        {Dir::W, 1, 950, 15},  {Dir::W, 2, 1000, 20}, {Dir::W, 3, 1050, 10},
        {Dir::W, 4, 1000, 10}, {Dir::W, 5, 1000, 20},
    };
}

ExperimentConfig parse_config_text(const std::string &text) {
    ExperimentConfig cfg;
    cfg.demand = default_demand_5x5();

    // side -> index -> draft, later assembled in a stable order
    std::map<std::string, std::map<int, DemandDraft>> demand_keys;
    bool demand_given = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");

        if (key.rfind("demand.", 0) == 0) {
            // demand.<side>.<index>.<ivn|tfr>
            std::vector<std::string> parts;
            std::string rest = key.substr(7);
            std::size_t pos;
            while ((pos = rest.find('.')) != std::string::npos) {
                parts.push_back(rest.substr(0, pos));
                rest = rest.substr(pos + 1);
            }
            parts.push_back(rest);
            if (parts.size() != 3)
                throw ConfigError("malformed demand key '" + key + "'");
            parse_side(key, parts[0]);
            const int index = static_cast<int>(parse_int(key, parts[1]));
            if (index < 1)
                throw ConfigError("entrance index must be >= 1 in key '" + key + "'");
            DemandDraft &draft = demand_keys[parts[0]][index];
            if (parts[2] == "ivn") {
                draft.ivn = parse_int(key, value);
                draft.has_ivn = true;
            } else if (parts[2] == "tfr") {
                draft.tfr_k = parse_tfr(key, value);
                draft.has_tfr = true;
            } else {
                throw ConfigError("unknown demand field in key '" + key + "'");
            }
            demand_given = true;
            continue;
        }

        if (key == "rows")
            cfg.rows = static_cast<int>(parse_int(key, value));
        else if (key == "cols")
            cfg.cols = static_cast<int>(parse_int(key, value));
        else if (key == "edge_length")
            cfg.edge_length = parse_real(key, value);
        else if (key == "cell_length")
            cfg.cell_length = parse_real(key, value);
        else if (key == "observe_cells")
            cfg.observe_cells = static_cast<int>(parse_int(key, value));
        else if (key == "controller")
            cfg.controller = value;
        else if (key == "episodes")
            cfg.episodes = parse_int(key, value);
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "replay_capacity")
            cfg.replay_capacity = static_cast<std::size_t>(parse_int(key, value));
        else if (key == "batch_size")
            cfg.batch_size = static_cast<int>(parse_int(key, value));
        else if (key == "epsilon_start")
            cfg.epsilon_start = parse_real(key, value);
        else if (key == "epsilon_end")
            cfg.epsilon_end = parse_real(key, value);
        else if (key == "epsilon_decay_epochs")
            cfg.epsilon_decay_epochs = parse_int(key, value);
        else if (key == "pretrain_epochs")
            cfg.pretrain_epochs = parse_int(key, value);
        else if (key == "target_update_interval")
            cfg.target_update_interval = static_cast<int>(parse_int(key, value));
        else if (key == "gamma")
            cfg.gamma = parse_real(key, value);
        else if (key == "learning_rate")
            cfg.learning_rate = parse_real(key, value);
        else if (key == "fictitious_rounds")
            cfg.fictitious_rounds = static_cast<int>(parse_int(key, value));
        else if (key == "max_episode_seconds")
            cfg.max_episode_seconds = parse_int(key, value);
        else if (key == "maql_alpha")
            cfg.maql_alpha = parse_real(key, value);
        else if (key == "fixed_action")
            cfg.fixed_action = static_cast<int>(parse_int(key, value));
        else
            throw ConfigError("unknown key '" + key + "'");
    }

    if (demand_given) {
        cfg.demand.clear();
        for (const char *side : {"north", "south", "east", "west"}) {
            auto it = demand_keys.find(side);
            if (it == demand_keys.end())
                continue;
            for (const auto &[index, draft] : it->second) {
                if (!draft.has_ivn || !draft.has_tfr)
                    throw ConfigError("entrance demand." + std::string(side) + "." +
                                      std::to_string(index) + " needs both ivn and tfr");
                cfg.demand.push_back({parse_side(side, side), index, draft.ivn, draft.tfr_k});
            }
        }
    }

    // Validation with field names; ranges per the documented schema.
    if (cfg.rows < 1 || cfg.cols < 1)
        throw ConfigError("rows and cols must be >= 1");
    if (cfg.gamma < 0.0 || cfg.gamma > 1.0)
        throw ConfigError("gamma must lie in [0, 1]");
    if (cfg.learning_rate <= 0.0)
        throw ConfigError("learning_rate must be positive");
    if (cfg.epsilon_start < 0.0 || cfg.epsilon_start > 1.0 || cfg.epsilon_end < 0.0 ||
        cfg.epsilon_end > 1.0)
        throw ConfigError("epsilon_start and epsilon_end must lie in [0, 1]");
    if (cfg.batch_size < 1)
        throw ConfigError("batch_size must be >= 1");
    if (cfg.replay_capacity == 0)
        throw ConfigError("replay_capacity must be >= 1");
    if (cfg.observe_cells < 1)
        throw ConfigError("observe_cells must be >= 1");
    if (cfg.fictitious_rounds < 1)
        throw ConfigError("fictitious_rounds must be >= 1");
    if (cfg.episodes < 0)
        throw ConfigError("episodes must be >= 0");
    if (cfg.max_episode_seconds < sim::kCycleSeconds)
        throw ConfigError("max_episode_seconds must cover at least one cycle");
    if (cfg.controller != "opndqn" && cfg.controller != "dqn" && cfg.controller != "maql" &&
        cfg.controller != "fixed")
        throw ConfigError("controller must be one of opndqn|dqn|maql|fixed");
    if (cfg.fixed_action < 0 || cfg.fixed_action >= sim::kActionCount)
        throw ConfigError("fixed_action must lie in [0, 4]");
    if (cfg.maql_alpha < 0.0 || cfg.maql_alpha > 1.0)
        throw ConfigError("maql_alpha must lie in [0, 1]");
    for (const sim::Entrance &e : cfg.demand) {
        const int limit = (e.side == sim::Dir::N || e.side == sim::Dir::S) ? cfg.cols : cfg.rows;
        if (e.index < 1 || e.index > limit)
            throw ConfigError("entrance index " + std::to_string(e.index) + " on side " +
                              sim::dir_name(e.side) + " is outside the grid");
        if (e.ivn <= 0)
            throw ConfigError("entrance ivn must be positive");
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string &source) {
    const auto &presets = builtin_presets();
    if (auto it = presets.find(source); it != presets.end())
        return parse_config_text(it->second);
    std::ifstream in(source);
    if (!in)
        throw ConfigError("config file not found: " + source);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig &cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "rows = " << cfg.rows << "\n";
    out << "cols = " << cfg.cols << "\n";
    out << "edge_length = " << cfg.edge_length << "\n";
    out << "cell_length = " << cfg.cell_length << "\n";
    out << "observe_cells = " << cfg.observe_cells << "\n";
    out << "controller = " << cfg.controller << "\n";
    out << "episodes = " << cfg.episodes << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "replay_capacity = " << cfg.replay_capacity << "\n";
    out << "batch_size = " << cfg.batch_size << "\n";
    out << "epsilon_start = " << cfg.epsilon_start << "\n";
    out << "epsilon_end = " << cfg.epsilon_end << "\n";
    out << "epsilon_decay_epochs = " << cfg.epsilon_decay_epochs << "\n";
    out << "pretrain_epochs = " << cfg.pretrain_epochs << "\n";
    out << "target_update_interval = " << cfg.target_update_interval << "\n";
    out << "gamma = " << cfg.gamma << "\n";
    out << "learning_rate = " << cfg.learning_rate << "\n";
    out << "fictitious_rounds = " << cfg.fictitious_rounds << "\n";
    out << "max_episode_seconds = " << cfg.max_episode_seconds << "\n";
    out << "maql_alpha = " << cfg.maql_alpha << "\n";
    out << "fixed_action = " << cfg.fixed_action << "\n";
    for (const sim::Entrance &e : cfg.demand) {
        const std::string stem =
            "demand." + std::string(sim::dir_name(e.side)) + "." + std::to_string(e.index);
        out << stem << ".ivn = " << e.ivn << "\n";
        out << stem << ".tfr = 1/" << e.tfr_k << "\n";
    }
    return out.str();
}

} // namespace tsc::harness
