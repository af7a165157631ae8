#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radial_jet::cli {

enum ExitCode : int {
  kOk = 0,
  kTrialFailed = 1,
  kParameterError = 2,
  kInternalError = 3,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless --out names a file; diagnostics and summaries go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radial_jet::cli
