#ifndef RANDSYNC_CLI_HPP
#define RANDSYNC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace randsync::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageOrIo = 1,
  kNegative = 2,  // not synchronizing, or the fast path failed to merge
  kCapacity = 3,
};

/// Runs one command line. `args` excludes the program name. Machine output
/// goes to `out` (or to --out files), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace randsync::cli

#endif  // RANDSYNC_CLI_HPP
