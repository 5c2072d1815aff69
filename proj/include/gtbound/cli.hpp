#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtbound {

/// Exit codes: success, the mathematics says no (domain errors, failed
/// workflow conditions), the computation failed (convergence), bad usage.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitNumeric = 2, kExitUsage = 64 };

/// Entry point shared by the `gtbound` binary and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gtbound
