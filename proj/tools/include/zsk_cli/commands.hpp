#pragma once

#include <iosfwd>

namespace zsk::cli {

/// Exit codes returned by run().
enum ExitCode : int { kOk = 0, kValidation = 1, kData = 2, kRuntime = 3 };

/// Entry point of the `zsk` tool; writes normal output to `out` and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zsk::cli
