#include "rrfcov/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rrfcov/errors.hpp"
#include "rrfcov/format.hpp"

namespace rrfcov {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

double require_number(const json& node, const std::string& field) {
  if (!node.is_number()) bad_field(field, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) bad_field(field, "must be finite");
  return v;
}

double number_or(const json& parent, const std::string& field, double fallback) {
  if (!parent.contains(field)) return fallback;
  return require_number(parent.at(field), field);
}

int int_or(const json& parent, const std::string& field, int fallback) {
  if (!parent.contains(field)) return fallback;
  const json& node = parent.at(field);
  if (!node.is_number_integer()) bad_field(field, "expected an integer");
  return node.get<int>();
}

Point2 parse_point(const json& node, const std::string& field) {
  if (!node.is_array() || node.size() != 2) {
    bad_field(field, "expected [x, y]");
  }
  return {require_number(node[0], field + "[0]"),
          require_number(node[1], field + "[1]")};
}

double degrees_to_radians(double deg) { return deg * kPi / 180.0; }

void check_keys(const json& node, const std::string& scope,
                const std::set<std::string>& allowed) {
  for (const auto& [key, _] : node.items()) {
    if (!allowed.count(key)) {
      bad_field(scope.empty() ? key : scope + "." + key, "unknown key");
    }
  }
}

Roi parse_roi(const json& node) {
  if (!node.is_object()) bad_field("roi", "expected an object");
  check_keys(node, "roi", {"min", "max"});
  if (!node.contains("min")) bad_field("roi.min", "missing");
  if (!node.contains("max")) bad_field("roi.max", "missing");
  const Roi roi{parse_point(node.at("min"), "roi.min"),
                parse_point(node.at("max"), "roi.max")};
  if (!(roi.width() > 0.0) || !(roi.height() > 0.0)) {
    bad_field("roi", "max must exceed min in both axes");
  }
  return roi;
}

void parse_sensor_shape(const json& node, const std::string& scope,
                        double& r_inner, double& r_outer, double& theta_h) {
  r_inner = number_or(node, "r_inner", r_inner);
  r_outer = number_or(node, "r_outer", r_outer);
  if (node.contains("theta_h")) {
    const double deg = require_number(node.at("theta_h"), scope + ".theta_h");
    if (!(deg > 0.0) || deg > 360.0) {
      bad_field(scope + ".theta_h", "must lie in (0, 360] degrees");
    }
    theta_h = degrees_to_radians(deg);
  }
  if (r_inner < 0.0) bad_field(scope + ".r_inner", "must be >= 0");
  if (!(r_outer > r_inner)) {
    bad_field(scope + ".r_outer", "must exceed r_inner");
  }
}

std::vector<Sensor> parse_sensors(const json& node,
                                  const ExperimentConfig& defaults) {
  if (!node.is_array() || node.empty()) {
    bad_field("sensors", "expected a non-empty array");
  }
  std::vector<Sensor> sensors;
  sensors.reserve(node.size());
  for (size_t i = 0; i < node.size(); ++i) {
    const json& item = node[i];
    const std::string scope = "sensors[" + std::to_string(i) + "]";
    if (!item.is_object()) bad_field(scope, "expected an object");
    check_keys(item, scope, {"id", "position", "r_inner", "r_outer", "theta_h"});
    if (!item.contains("position")) bad_field(scope + ".position", "missing");
    Sensor s;
    s.id = int_or(item, "id", int(i));
    s.nominal = parse_point(item.at("position"), scope + ".position");
    s.r_inner = defaults.r_inner;
    s.r_outer = defaults.r_outer;
    s.theta_h = defaults.theta_h;
    parse_sensor_shape(item, scope, s.r_inner, s.r_outer, s.theta_h);
    sensors.push_back(s);
  }
  return sensors;
}

void parse_params(const json& node, AlgoParams& params) {
  if (!node.is_object()) bad_field("params", "expected an object");
  check_keys(node, "params",
             {"epsilon", "delta", "lambda", "rho_min", "rho_max",
              "max_iterations", "fallback", "fallback_seed"});
  params.epsilon = number_or(node, "epsilon", params.epsilon);
  params.delta = number_or(node, "delta", params.delta);
  params.lambda = number_or(node, "lambda", params.lambda);
  params.rho_min = number_or(node, "rho_min", params.rho_min);
  if (node.contains("rho_max")) {
    params.rho_max = require_number(node.at("rho_max"), "params.rho_max");
    if (!(params.rho_max > 0.0)) bad_field("params.rho_max", "must be > 0");
  }
  params.max_iterations =
      int_or(node, "max_iterations", params.max_iterations);
  if (params.max_iterations < 1) {
    bad_field("params.max_iterations", "must be >= 1");
  }
  if (node.contains("fallback")) {
    const json& fb = node.at("fallback");
    if (!fb.is_string()) bad_field("params.fallback", "expected a string");
    const std::string name = fb.get<std::string>();
    if (name == "sleep") {
      params.fallback = FallbackPolicy::kSleep;
    } else if (name == "random") {
      params.fallback = FallbackPolicy::kRandom;
    } else {
      bad_field("params.fallback", "must be 'sleep' or 'random'");
    }
  }
  if (node.contains("fallback_seed")) {
    const json& fs = node.at("fallback_seed");
    if (!fs.is_number_unsigned() && !fs.is_number_integer()) {
      bad_field("params.fallback_seed", "expected an integer");
    }
    params.fallback_seed = fs.get<std::uint64_t>();
  }
  if (params.epsilon < 0.0) bad_field("params.epsilon", "must be >= 0");
  if (params.delta < 0.0) bad_field("params.delta", "must be >= 0");
  if (params.lambda < 0.0) bad_field("params.lambda", "must be >= 0");
  if (params.rho_min < 0.0) bad_field("params.rho_min", "must be >= 0");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  check_keys(doc, "", {"roi", "sensors", "deployment", "params", "experiment"});

  ExperimentConfig config;
  if (!doc.contains("roi")) bad_field("roi", "missing");
  config.roi = parse_roi(doc.at("roi"));

  const bool has_sensors = doc.contains("sensors");
  const bool has_deployment = doc.contains("deployment");
  if (has_sensors && has_deployment) {
    throw ConfigError("config: 'sensors' and 'deployment' are mutually exclusive");
  }
  if (!has_sensors && !has_deployment) {
    throw ConfigError("config: one of 'sensors' or 'deployment' is required");
  }

  if (has_deployment) {
    const json& node = doc.at("deployment");
    if (!node.is_object()) bad_field("deployment", "expected an object");
    check_keys(node, "deployment",
               {"m", "margin", "r_inner", "r_outer", "theta_h"});
    if (!node.contains("m")) bad_field("deployment.m", "missing");
    config.m = int_or(node, "m", config.m);
    if (config.m < 1) bad_field("deployment.m", "must be >= 1");
    config.margin = number_or(node, "margin", config.margin);
    if (config.margin < 0.0) bad_field("deployment.margin", "must be >= 0");
    parse_sensor_shape(node, "deployment", config.r_inner, config.r_outer,
                       config.theta_h);
  } else {
    config.explicit_sensors = parse_sensors(doc.at("sensors"), config);
    config.m = int(config.explicit_sensors->size());
  }

  if (doc.contains("params")) parse_params(doc.at("params"), config.params);

  if (doc.contains("experiment")) {
    const json& node = doc.at("experiment");
    if (!node.is_object()) bad_field("experiment", "expected an object");
    check_keys(node, "experiment",
               {"trials", "seed", "perturbation", "threads"});
    config.trials = int_or(node, "trials", config.trials);
    if (config.trials < 1) bad_field("experiment.trials", "must be >= 1");
    if (node.contains("seed")) {
      const json& sd = node.at("seed");
      if (!sd.is_number_unsigned() && !sd.is_number_integer()) {
        bad_field("experiment.seed", "expected an integer");
      }
      config.seed = sd.get<std::uint64_t>();
    }
    if (node.contains("perturbation") && !node.at("perturbation").is_null()) {
      const double mag =
          require_number(node.at("perturbation"), "experiment.perturbation");
      if (mag < 0.0) bad_field("experiment.perturbation", "must be >= 0");
      config.perturbation = mag;
    }
    config.threads = int_or(node, "threads", config.threads);
    if (config.threads < 1) bad_field("experiment.threads", "must be >= 1");
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<Sensor> config_sensors(const ExperimentConfig& config) {
  return trial_deployment(config, 0);
}

std::string config_to_json(const ExperimentConfig& config) {
  json doc;
  doc["roi"]["min"] = {quantize_digits(config.roi.min_corner.x),
                       quantize_digits(config.roi.min_corner.y)};
  doc["roi"]["max"] = {quantize_digits(config.roi.max_corner.x),
                       quantize_digits(config.roi.max_corner.y)};
  if (config.explicit_sensors) {
    json sensors = json::array();
    for (const Sensor& s : *config.explicit_sensors) {
      json item;
      item["id"] = s.id;
      item["position"] = {quantize_digits(s.nominal.x),
                          quantize_digits(s.nominal.y)};
      item["r_inner"] = quantize_digits(s.r_inner);
      item["r_outer"] = quantize_digits(s.r_outer);
      item["theta_h"] = quantize_digits(s.theta_h * 180.0 / kPi);
      sensors.push_back(std::move(item));
    }
    doc["sensors"] = std::move(sensors);
  } else {
    doc["deployment"]["m"] = config.m;
    doc["deployment"]["margin"] = quantize_digits(config.margin);
    doc["deployment"]["r_inner"] = quantize_digits(config.r_inner);
    doc["deployment"]["r_outer"] = quantize_digits(config.r_outer);
    doc["deployment"]["theta_h"] =
        quantize_digits(config.theta_h * 180.0 / kPi);
  }
  doc["params"]["epsilon"] = quantize_digits(config.params.epsilon);
  doc["params"]["delta"] = quantize_digits(config.params.delta);
  doc["params"]["lambda"] = quantize_digits(config.params.lambda);
  doc["params"]["rho_min"] = quantize_digits(config.params.rho_min);
  if (std::isfinite(config.params.rho_max)) {
    doc["params"]["rho_max"] = quantize_digits(config.params.rho_max);
  }
  doc["params"]["max_iterations"] = config.params.max_iterations;
  doc["params"]["fallback"] =
      config.params.fallback == FallbackPolicy::kSleep ? "sleep" : "random";
  doc["params"]["fallback_seed"] = config.params.fallback_seed;
  doc["experiment"]["trials"] = config.trials;
  doc["experiment"]["seed"] = config.seed;
  if (config.perturbation) {
    doc["experiment"]["perturbation"] = quantize_digits(*config.perturbation);
  }
  doc["experiment"]["threads"] = config.threads;
  return doc.dump(2);
}

}  // namespace rrfcov
