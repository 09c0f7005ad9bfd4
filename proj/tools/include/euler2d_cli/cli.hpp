#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace euler2d::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitVerdictFailure = 1,
  kExitConfigError = 2,
  kExitNumericFailure = 3,
};

/// Entry point behind the `euler2d` executable. `args` excludes the program
/// name, e.g. {"sample", "--config", "run.cfg", "--out", "out"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace euler2d::cli
