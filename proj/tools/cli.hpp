#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orad::cli {

/// Exit codes.
enum Exit : int { ok = 0, usage = 1, verdict_fail = 2, verdict_mismatch = 3 };

/// Runs one invocation. args excludes the program name. Normal output goes to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orad::cli
