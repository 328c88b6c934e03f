#pragma once

#include <string>

namespace rrfcov {

// Shortest decimal form with at most 9 significant digits, locale-free and
// identical across runs and platforms.  Integral values keep a trailing ".0"
// so CSV columns stay visibly numeric.
std::string format_double(double value);

// Nearest double whose decimal form has at most 9 significant digits.  JSON
// payloads round through this so serialized numbers match format_double.
double quantize_digits(double value);

}  // namespace rrfcov
