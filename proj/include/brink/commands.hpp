#ifndef BRINK_COMMANDS_HPP
#define BRINK_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include "brink/config.hpp"
#include "brink/potentials.hpp"
#include "brink/solver.hpp"

namespace brink {

// Exit-code contract of the command line tool.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNoBoundState = 3;
constexpr int kExitNoTransition = 4;
constexpr int kExitEnvelopeFail = 5;
constexpr int kExitInadmissible = 6;

struct CommandIO {
    Config config;
    std::string out_dir = ".";
    int workers = 0;          // 0 -> BRINK_WORKERS or hardware concurrency
    std::ostream* diag = nullptr;  // human-readable progress; data files carry no commentary
};

RadialModel model_from_config(const Config& cfg);

/// grid.r_max = auto picks max(50, 25/sqrt(2m dE)) * well_radius-scaled
/// from a coarse probe solve; near-critical callers use 1600*well_radius.
Grid grid_from_config(const Config& cfg, const RadialModel& m);

int cmd_solve(const CommandIO& io);
int cmd_critical(const CommandIO& io);
int cmd_envelope(const CommandIO& io);
int cmd_sweep(const CommandIO& io);

}  // namespace brink

#endif
