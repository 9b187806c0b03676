#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace betaexp::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kOutputDirEnv = "BETAEXP_OUT";

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitDomain = 3,
    kExitResource = 4,
};

/// Runs one invocation.  `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace betaexp::cli
