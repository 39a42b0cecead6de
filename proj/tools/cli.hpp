#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcpoly::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,        // bad flags, schema or parameter errors
    kAssumption = 2,   // a solver assumption does not hold
    kUnbounded = 3,    // unbounded problem or infeasible projection region
    kMismatch = 4,     // result failed re-verification
    kNumeric = 5,      // LP breakdown
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcpoly::cli
