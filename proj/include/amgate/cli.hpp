#pragma once

#include <iosfwd>

namespace amgate::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

/// Entry point of the `amgate` tool. Human-readable output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace amgate::cli
