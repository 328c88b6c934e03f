#pragma once

#include <string>

#include "rrfcov/harness.hpp"

namespace rrfcov {

// Parses the JSON experiment description.  Top-level keys: "roi" (required),
// exactly one of "sensors" / "deployment", optional "params" and
// "experiment".  Angles are given in degrees and converted to radians here.
// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& json_text);

ExperimentConfig load_config_file(const std::string& path);

// Sensors for single-solution commands: the explicit list when present,
// otherwise the first generated deployment.
std::vector<Sensor> config_sensors(const ExperimentConfig& config);

std::string config_to_json(const ExperimentConfig& config);

}  // namespace rrfcov
