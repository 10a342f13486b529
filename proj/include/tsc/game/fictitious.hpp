#pragma once

#include <span>
#include <vector>

#include "tsc/rng.hpp"

namespace tsc::game {

using JointAction = std::vector<int>;

// Supplies the per-agent Q-values the game iterates on. Production wires
// this to the agents' online networks; tests use payoff tables.
class QProvider {
  public:
    virtual ~QProvider() = default;
    virtual int agent_count() const = 0;
    virtual int action_count(int agent) const = 0;
    // Q-values over `agent`'s own actions with everyone else's action fixed
    // to `joint`.
    virtual std::vector<double> q_row(int agent, const JointAction &joint) const = 0;
};

// Argmax with ties broken toward the lowest index.
int argmax_lowest(std::span<const double> values);

struct GameResult {
    JointAction actions;
    int rounds = 0;
    bool converged = false; // reached a best-response fixed point
};

// Iterated best response over hypothetical actions; no agent acts until the
// result is returned. Every agent starts from a random action; with
// probability epsilon an agent keeps its random action and sits out the
// rounds (still visible to the others). Each synchronous round replaces
// every participant's action with its best response to the previous round's
// joint action. The game stops at a fixed point (returned as-is), when a
// joint action repeats, when no participant's best-response value improved,
// or after j_max rounds; in the non-fixed-point cases each participant gets
// the action with the largest Q-value it saw across rounds.
GameResult fictitious_game(const QProvider &q, double epsilon, Rng &rng, int j_max);

// Same dynamics from a caller-chosen starting joint action and optional
// frozen agents (mask true = does not best-respond).
GameResult fictitious_game_from(const QProvider &q, JointAction start,
                                const std::vector<bool> &frozen, int j_max);

} // namespace tsc::game
