#include "tsc/game/fictitious.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsc::game {

int argmax_lowest(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("argmax of empty range");
    int best = 0;
    for (int i = 1; i < static_cast<int>(values.size()); ++i)
        if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)])
            best = i;
    return best;
}

GameResult fictitious_game_from(const QProvider &q, JointAction start,
                                const std::vector<bool> &frozen, int j_max) {
    const int n = q.agent_count();
    if (static_cast<int>(start.size()) != n || static_cast<int>(frozen.size()) != n)
        throw std::invalid_argument("joint action size mismatch");

    bool anyone_plays = false;
    for (int i = 0; i < n; ++i)
        if (!frozen[static_cast<std::size_t>(i)])
            anyone_plays = true;
    if (!anyone_plays || j_max < 1)
        return {std::move(start), 0, false};

    JointAction actions = std::move(start);
    std::vector<JointAction> history{actions};

    // Value of the action each agent currently holds, and the best action
    // seen so far (later rounds win ties so a settled game returns its
    // final choice).
    std::vector<double> value(static_cast<std::size_t>(n), 0.0);
    std::vector<double> best_value(static_cast<std::size_t>(n), 0.0);
    JointAction best_action = actions;
    for (int i = 0; i < n; ++i) {
        if (frozen[static_cast<std::size_t>(i)])
            continue;
        const auto row = q.q_row(i, actions);
        value[static_cast<std::size_t>(i)] =
            row[static_cast<std::size_t>(actions[static_cast<std::size_t>(i)])];
        best_value[static_cast<std::size_t>(i)] = value[static_cast<std::size_t>(i)];
    }

    int round = 0;
    for (int j = 1; j <= j_max; ++j) {
        round = j;
        JointAction next = actions;
        std::vector<double> next_value = value;
        for (int i = 0; i < n; ++i) {
            if (frozen[static_cast<std::size_t>(i)])
                continue;
            const auto row = q.q_row(i, actions);
            const int a = argmax_lowest(row);
            next[static_cast<std::size_t>(i)] = a;
            next_value[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(a)];
        }

        for (int i = 0; i < n; ++i) {
            if (frozen[static_cast<std::size_t>(i)])
                continue;
            if (next_value[static_cast<std::size_t>(i)] >= best_value[static_cast<std::size_t>(i)]) {
                best_value[static_cast<std::size_t>(i)] = next_value[static_cast<std::size_t>(i)];
                best_action[static_cast<std::size_t>(i)] = next[static_cast<std::size_t>(i)];
            }
        }

        if (next == actions)
            return {std::move(next), j, true};

        bool improved = false;
        for (int i = 0; i < n; ++i)
            if (!frozen[static_cast<std::size_t>(i)] &&
                next_value[static_cast<std::size_t>(i)] > value[static_cast<std::size_t>(i)])
                improved = true;
        const bool repeated =
            std::find(history.begin(), history.end(), next) != history.end();

        actions = std::move(next);
        value = std::move(next_value);
        history.push_back(actions);
        if (repeated || !improved)
            break;
    }

    // Frozen agents keep their fixed action; everyone else takes the best
    // action seen across the rounds.
    for (int i = 0; i < n; ++i)
        if (frozen[static_cast<std::size_t>(i)])
            best_action[static_cast<std::size_t>(i)] = actions[static_cast<std::size_t>(i)];
    return {std::move(best_action), round, false};
}

GameResult fictitious_game(const QProvider &q, double epsilon, Rng &rng, int j_max) {
    const int n = q.agent_count();
    std::vector<bool> frozen(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i)
        frozen[static_cast<std::size_t>(i)] = uniform_real(rng) < epsilon;
    JointAction start(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        start[static_cast<std::size_t>(i)] = uniform_int(rng, 0, q.action_count(i) - 1);
    return fictitious_game_from(q, std::move(start), frozen, j_max);
}

} // namespace tsc::game
