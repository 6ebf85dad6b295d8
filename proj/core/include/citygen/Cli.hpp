#pragma once

#include <string>
#include <vector>

namespace citygen {

// Documented exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNoBuildableLand = 3,
  kExitIo = 4,
};

// Full CLI: generate | analyze | bench | snapshot. argv excludes argv[0].
int RunCli(const std::vector<std::string>& args);

}  // namespace citygen
