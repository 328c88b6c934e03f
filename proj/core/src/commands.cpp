#include "rrfcov/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rrfcov/config.hpp"
#include "rrfcov/errors.hpp"
#include "rrfcov/format.hpp"
#include "rrfcov/harness.hpp"
#include "rrfcov/oracle.hpp"
#include "rrfcov/svg.hpp"

namespace rrfcov {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kRadToDeg = 180.0 / kPi;

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string iso_utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ExperimentConfig load_with_overrides(const CommandOptions& options) {
  if (options.config_path.empty()) throw ConfigError("--config is required");
  ExperimentConfig config = load_config_file(options.config_path);
  if (options.seed) config.seed = *options.seed;
  if (options.trials) {
    if (*options.trials < 1) throw ConfigError("--trials must be >= 1");
    config.trials = *options.trials;
  }
  if (options.threads) {
    if (*options.threads < 1) throw ConfigError("--threads must be >= 1");
    config.threads = *options.threads;
  }
  return config;
}

void write_manifest(const CommandOptions& options, const fs::path& dir,
                    const std::string& command, const ExperimentConfig& config,
                    const std::vector<std::string>& outputs,
                    const std::string& started_at) {
  json manifest;
  manifest["command"] = command;
  manifest["config"] = json::parse(config_to_json(config));
  manifest["outputs"] = outputs;
  manifest["seed"] = config.seed;
  manifest["version"] = kArtifactVersion;
  if (options.stamp) {
    manifest["started_at"] = started_at;
    manifest["finished_at"] = iso_utc_now();
  }
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

const char* state_name(OrientationAssignment::State s) {
  switch (s) {
    case OrientationAssignment::State::kOriented: return "oriented";
    case OrientationAssignment::State::kSleep: return "sleep";
    case OrientationAssignment::State::kRandom: return "random";
  }
  return "?";
}

const char* model_name(ModelKind m) {
  switch (m) {
    case ModelKind::kNominal: return "nominal";
    case ModelKind::kRobustCounterpart: return "robust_counterpart";
    case ModelKind::kRobustified: return "robustified";
  }
  return "?";
}

const char* branch_name(OrientationSolution::Branch b) {
  switch (b) {
    case OrientationSolution::Branch::kNone: return "none";
    case OrientationSolution::Branch::kRobustCounterpart:
      return "robust_counterpart";
    case OrientationSolution::Branch::kRobustified: return "robustified";
  }
  return "?";
}

json point_json(Point2 p) {
  return json::array({quantize_digits(p.x), quantize_digits(p.y)});
}

json solution_json(std::span<const Sensor> sensors, const Roi& roi,
                   const OrientationSolution& solution) {
  json doc;
  doc["roi"]["min"] = point_json(roi.min_corner);
  doc["roi"]["max"] = point_json(roi.max_corner);
  doc["model"] = model_name(solution.model);
  doc["branch"] = branch_name(solution.branch_taken);
  doc["iterations"] = solution.iterations;
  doc["total_area"] = quantize_digits(solution.total_area);

  json list = json::array();
  for (size_t i = 0; i < sensors.size(); ++i) {
    const Sensor& s = sensors[i];
    const OrientationAssignment& asg = solution.assignments[i];
    json item;
    item["id"] = s.id;
    item["nominal"] = point_json(s.nominal);
    item["r_inner"] = quantize_digits(s.r_inner);
    item["r_outer"] = quantize_digits(s.r_outer);
    item["theta_h_deg"] = quantize_digits(s.theta_h * kRadToDeg);
    item["state"] = state_name(asg.state);
    if (asg.state == OrientationAssignment::State::kSleep) {
      item["direction_deg"] = nullptr;
      item["target_vertex"] = nullptr;
    } else {
      item["direction_deg"] = quantize_digits(asg.direction * kRadToDeg);
      item["target_vertex"] = asg.state == OrientationAssignment::State::kOriented
                                  ? point_json(asg.target_vertex)
                                  : json(nullptr);
    }
    item["effective_location"] = point_json(asg.effective_location);
    item["area"] = quantize_digits(asg.covered_area);
    if (i < solution.rrf_reports.size()) {
      item["rho"] = quantize_digits(solution.rrf_reports[i].rrf);
      item["binding"] = to_string(solution.rrf_reports[i].binding_constraint);
    }
    item["model"] = asg.branch ? json(model_name(*asg.branch)) : json(nullptr);
    item["rrf_violation"] = asg.rrf_violation;
    list.push_back(std::move(item));
  }
  doc["sensors"] = std::move(list);
  return doc;
}

std::string summary_csv(std::span<const Sensor> sensors,
                        const OrientationSolution& solution) {
  std::string csv =
      "sensor,x,y,state,direction_deg,effective_x,effective_y,area,rho,"
      "model,rrf_violation\n";
  for (size_t i = 0; i < sensors.size(); ++i) {
    const Sensor& s = sensors[i];
    const OrientationAssignment& asg = solution.assignments[i];
    csv += std::to_string(s.id);
    csv += "," + format_double(s.nominal.x);
    csv += "," + format_double(s.nominal.y);
    csv += ",";
    csv += state_name(asg.state);
    csv += ",";
    if (asg.state != OrientationAssignment::State::kSleep) {
      csv += format_double(asg.direction * kRadToDeg);
    }
    csv += "," + format_double(asg.effective_location.x);
    csv += "," + format_double(asg.effective_location.y);
    csv += "," + format_double(asg.covered_area);
    csv += ",";
    if (i < solution.rrf_reports.size()) {
      csv += format_double(solution.rrf_reports[i].rrf);
    }
    csv += ",";
    csv += asg.branch ? model_name(*asg.branch) : "";
    csv += ",";
    csv += asg.rrf_violation ? "1" : "0";
    csv += "\n";
  }
  return csv;
}

}  // namespace

int cmd_solve(const CommandOptions& options) {
  const std::string started_at = iso_utc_now();
  const ExperimentConfig config = load_with_overrides(options);
  const std::vector<Sensor> sensors = config_sensors(config);
  const OrientationSolution solution =
      run_integrated_algorithm(sensors, config.roi, config.params);

  const fs::path dir(options.out_dir);
  fs::create_directories(dir);
  const json doc = solution_json(sensors, config.roi, solution);
  write_text_file(dir / "solution.json", doc.dump(2) + "\n");
  write_text_file(dir / "summary.csv", summary_csv(sensors, solution));
  write_manifest(options, dir, "solve", config,
                 {"solution.json", "summary.csv"}, started_at);

  std::cout << "solve: " << sensors.size() << " sensors, branch "
            << branch_name(solution.branch_taken) << ", total_area "
            << format_double(solution.total_area) << "\n";
  return 0;
}

int cmd_compare(const CommandOptions& options) {
  const std::string started_at = iso_utc_now();
  const ExperimentConfig config = load_with_overrides(options);
  const ComparisonResult result = run_comparison(config);

  std::string csv = "trial,strategy,condition,total_area\n";
  for (int trial = 0; trial < config.trials; ++trial) {
    for (Strategy strategy : kAllStrategies) {
      for (Condition condition : {Condition::kNominal, Condition::kPerturbed}) {
        csv += std::to_string(trial);
        csv += ",";
        csv += to_string(strategy);
        csv += ",";
        csv += to_string(condition);
        csv += ",";
        csv +=
            format_double(result.per_trial[int(strategy)][int(condition)][trial]);
        csv += "\n";
      }
    }
  }

  json means;
  for (Strategy strategy : kAllStrategies) {
    json entry;
    entry["nominal"] =
        quantize_digits(result.means[int(strategy)][int(Condition::kNominal)]);
    entry["perturbed"] = quantize_digits(
        result.means[int(strategy)][int(Condition::kPerturbed)]);
    means["means"][to_string(strategy)] = std::move(entry);
  }
  means["seed"] = config.seed;
  means["trials"] = config.trials;

  const fs::path dir(options.out_dir);
  fs::create_directories(dir);
  write_text_file(dir / "compare.csv", csv);
  write_text_file(dir / "means.json", means.dump(2) + "\n");
  write_manifest(options, dir, "compare", config, {"compare.csv", "means.json"},
                 started_at);

  std::cout << "compare: " << config.trials << " trials\n";
  for (Strategy strategy : kAllStrategies) {
    std::cout << "  " << to_string(strategy) << ": nominal "
              << format_double(result.means[int(strategy)][0]) << ", perturbed "
              << format_double(result.means[int(strategy)][1]) << "\n";
  }
  return 0;
}

int cmd_sweep(const CommandOptions& options) {
  const std::string started_at = iso_utc_now();
  const ExperimentConfig config = load_with_overrides(options);
  if (options.parameter.empty()) throw ConfigError("--param is required");
  if (options.values.empty()) throw ConfigError("--values is required");

  const std::vector<SweepRow> rows =
      parametric_sweep(config, options.parameter, options.values);

  std::string csv = "parameter,value,mean";
  for (int t = 0; t < config.trials; ++t) {
    csv += ",trial_" + std::to_string(t);
  }
  csv += "\n";
  for (const SweepRow& row : rows) {
    csv += row.parameter;
    csv += "," + format_double(row.value);
    csv += "," + format_double(row.mean);
    for (double v : row.per_trial) csv += "," + format_double(v);
    csv += "\n";
  }

  const fs::path dir(options.out_dir);
  fs::create_directories(dir);
  write_text_file(dir / "sweep.csv", csv);
  write_manifest(options, dir, "sweep", config, {"sweep.csv"}, started_at);

  std::cout << "sweep " << options.parameter << ":";
  for (const SweepRow& row : rows) {
    std::cout << " " << format_double(row.value) << "->"
              << format_double(row.mean);
  }
  std::cout << "\n";
  return 0;
}

namespace {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

CheckResult check_area_agreement(const CommandOptions& options,
                                 std::uint64_t seed, int threads) {
  const std::vector<AreaFixture> fixtures =
      random_area_fixtures(options.fixtures, seed);
  double worst_ratio = 0.0;
  int worst_index = -1;
  bool pass = true;
  for (size_t i = 0; i < fixtures.size(); ++i) {
    const AreaFixture& f = fixtures[i];
    const double exact = sector_polygon_intersection_area(f.sector, f.polygon);
    const AreaEstimate est = monte_carlo_sector_polygon_area(
        f.sector, f.polygon, options.samples, seed + i, threads);
    const double bound =
        options.tolerance_scale * area_agreement_bound(exact, est);
    const double diff = std::abs(exact - est.mean);
    const double ratio = bound > 0.0
                             ? diff / bound
                             : (diff > 0.0
                                    ? std::numeric_limits<double>::infinity()
                                    : 0.0);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_index = int(i);
    }
    if (diff > bound) pass = false;
  }
  std::ostringstream detail;
  detail << options.fixtures << " fixtures x " << options.samples
         << " samples, tolerance max(3*SE, 1% above 1) x "
         << format_double(options.tolerance_scale) << ", worst |diff|/bound "
         << format_double(worst_ratio) << " at fixture " << worst_index;
  return {"area_agreement", pass, detail.str()};
}

CheckResult check_case1_form(const CommandOptions& options,
                             std::uint64_t seed) {
  const bool span_form = options.case1_form == "span";
  RandomStream rng(seed, 0xCA5Eull);
  const Roi roi{{0.0, 0.0}, {1000.0, 1000.0}};
  const VoronoiDiagram diagram =
      build_clipped_voronoi(std::vector<Point2>{{500.0, 500.0}}, roi);

  double max_diff = 0.0;
  const double tol = 1e-9;
  for (int i = 0; i < 60; ++i) {
    const double r_outer = 20.0 + 120.0 * rng.next_u01();
    const double r_inner = i % 3 == 0 ? 0.0 : (0.1 + 0.7 * rng.next_u01()) * r_outer;
    const double theta_h = (0.05 + 1.95 * rng.next_u01()) * kPi;
    const AnnularSector s = make_sector({500.0, 500.0}, r_inner, r_outer,
                                        theta_h, rng.next_angle());
    const double engine = sector_polygon_intersection_area(s, diagram.cells[0].polygon);
    const double closed =
        span_form ? annular_sector_area_span_squared(s) : annular_sector_area(s);
    max_diff = std::max(max_diff, std::abs(engine - closed));
  }
  std::ostringstream detail;
  detail << "closed form '" << options.case1_form << "', max |diff| "
         << format_double(max_diff) << ", tol " << format_double(tol);
  return {"case1_closed_form", max_diff <= tol, detail.str()};
}

CheckResult check_rrf_bisection(std::uint64_t seed) {
  const Roi roi{{0.0, 0.0}, {1000.0, 1000.0}};
  RandomStream rng(seed, 0xB15Cull);
  double max_diff = 0.0;
  const double tol = 1e-5;
  for (int d = 0; d < 20; ++d) {
    const int m = 5 + int(rng.next_u01() * 46.0);
    const std::vector<Sensor> sensors = random_deployment(
        m, roi, seed + 1000 + d, 1.0, 25.0, 80.0, kPi / 3.0);
    std::vector<Point2> sites;
    for (const Sensor& s : sensors) sites.push_back(s.nominal);
    const VoronoiDiagram diagram = build_clipped_voronoi(sites, roi);
    for (const VoronoiCell& cell : diagram.cells) {
      const RrfReport report = sensor_rrf(cell);
      const int n_dirs =
          std::max(64, int(std::ceil(kPi * std::sqrt(
                        std::max(report.rrf, 1.0) / (0.25 * tol)))));
      const double hi = std::max(1.0, 2.0 * report.rrf);
      const double bis = rrf_by_bisection(cell.site, cell.neighbor_edges, hi,
                                          0.1 * tol, n_dirs);
      max_diff = std::max(max_diff, std::abs(report.rrf - bis));
    }
  }
  std::ostringstream detail;
  detail << "20 deployments, max |slack - bisection| " << format_double(max_diff)
         << ", tol " << format_double(tol);
  return {"rrf_bisection", max_diff <= tol, detail.str()};
}

CheckResult check_rrf_two_site(std::uint64_t) {
  const Roi roi{{0.0, 0.0}, {1000.0, 1000.0}};
  const VoronoiDiagram diagram = build_clipped_voronoi(
      std::vector<Point2>{{250.0, 500.0}, {750.0, 500.0}}, roi);
  double max_err = 0.0;
  for (const VoronoiCell& cell : diagram.cells) {
    max_err = std::max(max_err, std::abs(sensor_rrf(cell).rrf - 250.0));
  }
  std::ostringstream detail;
  detail << "two facing sites, |rho - 250| = " << format_double(max_err);
  return {"rrf_two_site", max_err == 0.0, detail.str()};
}

CheckResult check_argmax(std::uint64_t seed) {
  const Roi roi{{0.0, 0.0}, {1000.0, 1000.0}};
  AlgoParams params;
  int mismatches = 0;
  int examined = 0;
  for (int t = 0; t < 25; ++t) {
    const int m = 3 + t % 10;
    const std::vector<Sensor> sensors =
        random_deployment(m, roi, seed + 2000 + t, 1.0, 25.0, 80.0, kPi / 3.0);
    std::vector<Point2> sites;
    for (const Sensor& s : sensors) sites.push_back(s.nominal);
    const VoronoiDiagram diagram = build_clipped_voronoi(sites, roi);
    for (size_t i = 0; i < sensors.size(); ++i) {
      const RrfReport report = sensor_rrf(diagram.cells[i]);
      const double shift = std::min(report.rrf, params.rho_max);
      const OrientationAssignment asg = select_orientation(
          sensors[i], diagram.cells[i], ModelKind::kRobustCounterpart, params,
          shift);
      const BestVertexReport oracle =
          brute_force_best_vertex(sensors[i], diagram.cells[i], shift);
      ++examined;
      if (asg.state == OrientationAssignment::State::kOriented) {
        if (!oracle.best_vertex ||
            oracle.best_vertex->vertex_index !=
                asg.candidate_ranking.front().vertex_index) {
          ++mismatches;
        }
      } else if (oracle.best_vertex &&
                 oracle.best_vertex->area >= params.lambda) {
        ++mismatches;
      }
    }
  }
  std::ostringstream detail;
  detail << examined << " selections, " << mismatches << " mismatches";
  return {"argmax", mismatches == 0, detail.str()};
}

}  // namespace

int cmd_validate(const CommandOptions& options) {
  const std::uint64_t seed = options.seed.value_or(1);
  const int threads = options.threads.value_or(1);
  if (options.case1_form != "difference" && options.case1_form != "span") {
    throw ConfigError("--case1-form must be 'difference' or 'span'");
  }

  std::vector<CheckResult> checks;
  checks.push_back(check_area_agreement(options, seed, threads));
  checks.push_back(check_case1_form(options, seed));
  checks.push_back(check_rrf_bisection(seed));
  checks.push_back(check_rrf_two_site(seed));
  checks.push_back(check_argmax(seed));

  bool all_pass = true;
  json report;
  report["version"] = kArtifactVersion;
  report["seed"] = seed;
  json items = json::array();
  for (const CheckResult& check : checks) {
    all_pass = all_pass && check.pass;
    std::cout << check.name << ": " << (check.pass ? "PASS" : "FAIL") << " ("
              << check.detail << ")\n";
    json item;
    item["name"] = check.name;
    item["pass"] = check.pass;
    item["detail"] = check.detail;
    items.push_back(std::move(item));
  }
  report["checks"] = std::move(items);
  report["pass"] = all_pass;

  const fs::path dir(options.out_dir);
  fs::create_directories(dir);
  write_text_file(dir / "validation_report.json", report.dump(2) + "\n");
  return all_pass ? 0 : 4;
}

namespace {

Point2 parse_point_or_throw(const json& node, const char* what) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() ||
      !node[1].is_number()) {
    throw ConfigError(std::string("solution file: bad point in ") + what);
  }
  return {node[0].get<double>(), node[1].get<double>()};
}

}  // namespace

int cmd_render(const CommandOptions& options) {
  if (options.solution_path.empty()) {
    throw ConfigError("render: a solution file is required");
  }
  std::ifstream in(options.solution_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open solution file: " + options.solution_path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("solution file is not valid JSON: ") + e.what());
  }

  try {
    const Roi roi{parse_point_or_throw(doc.at("roi").at("min"), "roi.min"),
                  parse_point_or_throw(doc.at("roi").at("max"), "roi.max")};
    std::vector<Sensor> sensors;
    OrientationSolution solution;
    for (const json& item : doc.at("sensors")) {
      Sensor s;
      s.id = item.at("id").get<int>();
      s.nominal = parse_point_or_throw(item.at("nominal"), "nominal");
      s.r_inner = item.at("r_inner").get<double>();
      s.r_outer = item.at("r_outer").get<double>();
      s.theta_h = item.at("theta_h_deg").get<double>() / kRadToDeg;
      sensors.push_back(s);

      OrientationAssignment asg;
      asg.sensor = s.id;
      const std::string state = item.at("state").get<std::string>();
      if (state == "oriented") {
        asg.state = OrientationAssignment::State::kOriented;
      } else if (state == "random") {
        asg.state = OrientationAssignment::State::kRandom;
      } else if (state == "sleep") {
        asg.state = OrientationAssignment::State::kSleep;
      } else {
        throw ConfigError("solution file: unknown state '" + state + "'");
      }
      if (asg.state != OrientationAssignment::State::kSleep) {
        asg.direction = item.at("direction_deg").get<double>() / kRadToDeg;
        asg.effective_location =
            parse_point_or_throw(item.at("effective_location"),
                                 "effective_location");
      } else {
        asg.effective_location = s.nominal;
      }
      solution.assignments.push_back(std::move(asg));
    }
    if (sensors.empty()) throw ConfigError("solution file: no sensors");

    std::vector<Point2> sites;
    for (const Sensor& s : sensors) sites.push_back(s.nominal);
    const VoronoiDiagram diagram = build_clipped_voronoi(sites, roi);

    const std::string svg = render_solution_svg(sensors, diagram, solution);
    const fs::path out = options.out_svg.empty()
                             ? fs::path(options.out_dir) / "solution.svg"
                             : fs::path(options.out_svg);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    write_text_file(out, svg);
    std::cout << "render: wrote " << out.string() << "\n";
    return 0;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("solution file: ") + e.what());
  }
}

}  // namespace rrfcov
