// Command-line entry point, usable in-process for tests.

#ifndef TTREE_CLI_HPP
#define TTREE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ttree::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kPrecondition = 3,
  kPromise = 4,
  kOracleMismatch = 5,
};

constexpr const char* kHorizonEnv = "TTREE_HORIZON";
constexpr std::size_t kDefaultHorizon = 64;
constexpr std::size_t kDefaultOracleWindow = 32;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ttree::cli

#endif  // TTREE_CLI_HPP
