#include "tsc/harness/config.hpp"

namespace tsc::harness {

namespace {

const char *kPaper5x5 = R"(# 5x5 grid, full-scale demand table
rows = 5
cols = 5
edge_length = 120
cell_length = 5
observe_cells = 10
controller = opndqn
episodes = 100
seed = 1

demand.north.1.ivn = 1000
demand.north.1.tfr = 1/20
demand.north.2.ivn = 1000
demand.north.2.tfr = 1/10
demand.north.3.ivn = 1100
demand.north.3.tfr = 1/15
demand.north.4.ivn = 1050
demand.north.4.tfr = 1/20
demand.north.5.ivn = 900
demand.north.5.tfr = 1/10
demand.south.1.ivn = 1100
demand.south.1.tfr = 1/15
demand.south.2.ivn = 900
demand.south.2.tfr = 1/15
demand.south.3.ivn = 900
demand.south.3.tfr = 1/20
demand.south.4.ivn = 1000
demand.south.4.tfr = 1/10
demand.south.5.ivn = 950
demand.south.5.tfr = 1/20
demand.east.1.ivn = 1050
demand.east.1.tfr = 1/20
demand.east.2.ivn = 1000
demand.east.2.tfr = 1/15
demand.east.3.ivn = 950
demand.east.3.tfr = 1/15
demand.east.4.ivn = 1000
demand.east.4.tfr = 1/20
demand.east.5.ivn = 850
demand.east.5.tfr = 1/10
demand.west.1.ivn = 950
demand.west.1.tfr = 1/15
demand.west.2.ivn = 1000
demand.west.2.tfr = 1/20
demand.west.3.ivn = 1050
demand.west.3.tfr = 1/10
demand.west.4.ivn = 1000
demand.west.4.tfr = 1/10
demand.west.5.ivn = 1000
demand.west.5.tfr = 1/20
)";

// Desk-scale run: 9 agents, 720 vehicles per episode, north-south flows
// clearly heavier than east-west so an adaptive split has something to
// find. Faster schedule and a hotter optimizer than the full-scale
// defaults, sized for a ~150 episode training budget.
const char *kSmoke3x3 = R"(# 3x3 smoke grid
rows = 3
cols = 3
edge_length = 100
cell_length = 5
observe_cells = 10
controller = opndqn
episodes = 150
seed = 1
pretrain_epochs = 500
epsilon_decay_epochs = 2000
learning_rate = 0.005
gamma = 0.9

demand.north.1.ivn = 60
demand.north.1.tfr = 1/10
demand.north.2.ivn = 60
demand.north.2.tfr = 1/10
demand.north.3.ivn = 60
demand.north.3.tfr = 1/15
demand.south.1.ivn = 60
demand.south.1.tfr = 1/10
demand.south.2.ivn = 60
demand.south.2.tfr = 1/15
demand.south.3.ivn = 60
demand.south.3.tfr = 1/10
demand.east.1.ivn = 60
demand.east.1.tfr = 1/20
demand.east.2.ivn = 60
demand.east.2.tfr = 1/20
demand.east.3.ivn = 60
demand.east.3.tfr = 1/20
demand.west.1.ivn = 60
demand.west.1.tfr = 1/20
demand.west.2.ivn = 60
demand.west.2.tfr = 1/20
demand.west.3.ivn = 60
demand.west.3.tfr = 1/20
)";

} // namespace

const std::map<std::string, std::string> &builtin_presets() {
    static const std::map<std::string, std::string> presets = {
        {"paper-5x5", kPaper5x5},
        {"smoke-3x3", kSmoke3x3},
    };
    return presets;
}

} // namespace tsc::harness
