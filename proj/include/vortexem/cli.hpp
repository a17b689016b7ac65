#pragma once

#include <string>
#include <vector>

namespace vortexem {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitNonConvergence = 2,
    kExitNeutrality = 3,
    kExitQuadrature = 4,
    kExitScenario = 5,
};

/// Runs the `vortexem` command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace vortexem
