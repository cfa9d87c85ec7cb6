#pragma once

#include <string>

namespace sics {

// Locale-independent shortest text that round-trips `value` under the
// requested significant digits (or exactly, when digits is 0).
std::string format_real(double value, int significant_digits = 9);

}  // namespace sics
