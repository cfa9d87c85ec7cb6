#include "sics/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace sics {

std::string format_real(double value, int significant_digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = significant_digits > 0
                       ? std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::general, significant_digits)
                       : std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

}  // namespace sics
