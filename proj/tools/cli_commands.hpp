#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logimap::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kIoError = 3 };

/// Runs `logimap <args...>` (args excludes the program name). Normal output
/// goes to `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace logimap::cli
