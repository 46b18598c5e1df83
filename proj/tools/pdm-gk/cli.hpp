#ifndef PDMGK_TOOLS_CLI_HPP
#define PDMGK_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pdmgk::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kNumerical = 3,
};

/// Runs one pdm-gk invocation. args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace pdmgk::cli

#endif
