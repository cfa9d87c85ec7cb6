#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sics::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

// Runs one `sics` command line. args[0] is the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sics::cli
