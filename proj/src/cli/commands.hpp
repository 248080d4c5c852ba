#pragma once

#include <iosfwd>

namespace cvbell::cli {

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kInvalidInput = 2, kConvergenceFailure = 3 };

/// Entry point of the `cvbell` tool.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cvbell::cli
