#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fsf::cli {

/// Exit statuses of the command-line tool.
enum Status : int {
  kOk = 0,           // success, or the property holds
  kFails = 1,        // the property fails (not a member, languages differ)
  kInputError = 2,   // usage or input error
  kInconclusive = 3  // a search budget ran out before a verdict
};

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsf::cli
