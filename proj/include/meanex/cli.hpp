#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meanex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

/// Runs the `meanex` command line. args excludes the program name. Returns
/// the process exit code: 0 success, 2 usage or input error, 3 numeric or
/// domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meanex::cli
