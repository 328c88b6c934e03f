#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rrfcov {

inline constexpr const char* kArtifactVersion = "1.0.0";

struct CommandOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;

  // sweep
  std::string parameter;
  std::vector<double> values;

  // validate
  std::string case1_form = "difference";  // or "span"
  double tolerance_scale = 1.0;
  int fixtures = 120;
  std::int64_t samples = 200000;

  // render
  std::string solution_path;
  std::string out_svg;

  // wall-clock timestamps in the manifest (off keeps re-runs byte-identical)
  bool stamp = false;
};

// Each command returns its process exit code:
// 0 success, 2 config error, 3 infeasible input, 4 validation failure.
int cmd_solve(const CommandOptions& options);
int cmd_compare(const CommandOptions& options);
int cmd_sweep(const CommandOptions& options);
int cmd_validate(const CommandOptions& options);
int cmd_render(const CommandOptions& options);

}  // namespace rrfcov
