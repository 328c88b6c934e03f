#pragma once

#include <stdexcept>
#include <string>

namespace rrfcov {

// Malformed or inconsistent user input (config files, CLI values).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that admits no solution (duplicate sites,
// sites outside the region, deployment that cannot be sampled).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace rrfcov
