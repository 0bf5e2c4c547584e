#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace opcorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;

/// Runs one `opcorr` invocation. `args` excludes the program name.
/// Returns 0 on success, 2 on validation failure, 1 on usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opcorr::cli
