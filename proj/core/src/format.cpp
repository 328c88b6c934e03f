#include "rrfcov/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace rrfcov {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // normalize -0

  char buf[48];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 9);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  std::string out(buf, ptr);
  if (out.find('.') == std::string::npos &&
      out.find('e') == std::string::npos &&
      out.find("inf") == std::string::npos) {
    out += ".0";
  }
  return out;
}

double quantize_digits(double value) {
  if (!std::isfinite(value)) return value;
  char buf[48];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 9);
  if (ec != std::errc{}) return value;
  *ptr = '\0';
  return std::strtod(buf, nullptr);
}

}  // namespace rrfcov
