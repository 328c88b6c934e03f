#include "rrfcov/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rrfcov/errors.hpp"
#include "rrfcov/rng.hpp"

namespace rrfcov {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kRandom: return "random";
    case Strategy::kIds: return "ids";
    case Strategy::kRobustified: return "robustified";
  }
  return "?";
}

const char* to_string(Condition c) {
  return c == Condition::kNominal ? "nominal" : "perturbed";
}

namespace {

constexpr std::uint64_t kDeployStream = 0xDE11ull;
constexpr std::uint64_t kRandomDirStream = 0x0D12ull;
constexpr std::uint64_t kPerturbStream = 0x9E12ull;
constexpr int kMaxSiteAttempts = 1000;

std::vector<Point2> sites_of(std::span<const Sensor> sensors) {
  std::vector<Point2> sites;
  sites.reserve(sensors.size());
  for (const Sensor& s : sensors) sites.push_back(s.nominal);
  return sites;
}

double assignment_area_at(const Sensor& sensor, const VoronoiCell& cell,
                          const OrientationAssignment& asg, Point2 apex) {
  if (asg.state == OrientationAssignment::State::kSleep) return 0.0;
  const AnnularSector footprint = make_sector(
      apex, sensor.r_inner, sensor.r_outer, sensor.theta_h, asg.direction);
  return sector_polygon_intersection_area(footprint, cell.polygon);
}

}  // namespace

std::vector<Sensor> random_deployment(int m, const Roi& roi,
                                      std::uint64_t seed, double margin,
                                      double r_inner, double r_outer,
                                      double theta_h) {
  if (m < 1) throw InfeasibleError("random_deployment: need m >= 1");
  const double min_x = roi.min_corner.x + margin;
  const double max_x = roi.max_corner.x - margin;
  const double min_y = roi.min_corner.y + margin;
  const double max_y = roi.max_corner.y - margin;
  if (!(max_x > min_x) || !(max_y > min_y)) {
    throw InfeasibleError("random_deployment: margin leaves no room");
  }

  RandomStream rng(seed, kDeployStream);
  std::vector<Sensor> sensors;
  sensors.reserve(m);
  std::vector<Point2> placed;
  placed.reserve(m);
  for (int i = 0; i < m; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt < kMaxSiteAttempts && !ok; ++attempt) {
      const std::uint64_t counter =
          (std::uint64_t(i) * kMaxSiteAttempts + attempt) * 2;
      const double ux = (rng.at(counter) >> 11) * 0x1.0p-53;
      const double uy = (rng.at(counter + 1) >> 11) * 0x1.0p-53;
      const Point2 p{min_x + (max_x - min_x) * ux, min_y + (max_y - min_y) * uy};
      const bool clash =
          std::any_of(placed.begin(), placed.end(),
                      [&](Point2 q) { return distance(p, q) <= 1e-6; });
      if (clash) continue;
      placed.push_back(p);
      sensors.push_back({i, p, r_inner, r_outer, theta_h});
      ok = true;
    }
    if (!ok) {
      throw InfeasibleError(
          "random_deployment: could not separate site " + std::to_string(i) +
          " after " + std::to_string(kMaxSiteAttempts) + " attempts");
    }
  }
  return sensors;
}

OrientationSolution ids_orientation(std::span<const Sensor> sensors,
                                    const Roi& roi, const AlgoParams& params) {
  if (sensors.empty()) throw InfeasibleError("ids_orientation: no sensors");
  const VoronoiDiagram diagram = build_clipped_voronoi(sites_of(sensors), roi);

  OrientationSolution solution;
  solution.model = ModelKind::kNominal;
  solution.branch_taken = OrientationSolution::Branch::kNone;
  solution.rrf_reports.reserve(sensors.size());
  for (const VoronoiCell& cell : diagram.cells) {
    solution.rrf_reports.push_back(sensor_rrf(cell));
  }
  for (size_t i = 0; i < sensors.size(); ++i) {
    solution.assignments.push_back(select_orientation(
        sensors[i], diagram.cells[i], ModelKind::kNominal, params, 0.0));
  }
  return cooperative_recalibration(std::move(solution), diagram, sensors,
                                   params);
}

OrientationSolution random_orientation(std::span<const Sensor> sensors,
                                       const Roi& roi, std::uint64_t seed) {
  if (sensors.empty()) throw InfeasibleError("random_orientation: no sensors");
  const VoronoiDiagram diagram = build_clipped_voronoi(sites_of(sensors), roi);

  OrientationSolution solution;
  solution.model = ModelKind::kNominal;
  solution.branch_taken = OrientationSolution::Branch::kNone;
  RandomStream rng(seed, kRandomDirStream);
  for (size_t i = 0; i < sensors.size(); ++i) {
    OrientationAssignment asg;
    asg.sensor = sensors[i].id;
    asg.state = OrientationAssignment::State::kRandom;
    asg.direction = rng.next_angle();
    asg.effective_location = sensors[i].nominal;
    asg.covered_area = assignment_area_at(sensors[i], diagram.cells[i], asg,
                                          sensors[i].nominal);
    solution.assignments.push_back(std::move(asg));
  }
  solution.total_area = solution_total_area(solution);
  solution.iterations = 0;
  return solution;
}

double nominal_evaluation(std::span<const Sensor> sensors,
                          const VoronoiDiagram& diagram,
                          const OrientationSolution& solution) {
  double total = 0.0;
  for (size_t i = 0; i < sensors.size(); ++i) {
    total += assignment_area_at(sensors[i], diagram.cells[i],
                                solution.assignments[i], sensors[i].nominal);
  }
  return total;
}

double perturbed_evaluation(std::span<const Sensor> sensors,
                            const VoronoiDiagram& diagram,
                            const OrientationSolution& solution,
                            PerturbMode mode, std::optional<double> magnitude,
                            std::uint64_t seed) {
  if (solution.assignments.size() != sensors.size()) {
    throw std::invalid_argument(
        "perturbed_evaluation: solution/sensor size mismatch");
  }
  if (!magnitude && solution.rrf_reports.size() != sensors.size()) {
    throw std::invalid_argument(
        "perturbed_evaluation: per-sensor magnitudes need rrf reports");
  }
  RandomStream rng(seed, kPerturbStream);
  double total = 0.0;
  for (size_t i = 0; i < sensors.size(); ++i) {
    const OrientationAssignment& asg = solution.assignments[i];
    if (asg.state == OrientationAssignment::State::kSleep) continue;
    const double shift =
        magnitude ? *magnitude : solution.rrf_reports[i].rrf;
    const double angle = mode == PerturbMode::kAdversarial
                             ? asg.direction
                             : rng.next_angle();
    const Point2 apex = sensors[i].nominal + shift * unit_vector(angle);
    total += assignment_area_at(sensors[i], diagram.cells[i], asg, apex);
  }
  return total;
}

std::vector<Sensor> trial_deployment(const ExperimentConfig& config,
                                     int trial) {
  if (config.explicit_sensors) return *config.explicit_sensors;
  const std::uint64_t trial_seed =
      derive_stream(config.seed, 0x7101ull + std::uint64_t(trial));
  return random_deployment(config.m, config.roi, trial_seed, config.margin,
                           config.r_inner, config.r_outer, config.theta_h);
}

namespace {

template <class Fn>
void for_each_trial(int trials, int threads, Fn&& body) {
  if (threads <= 1 || trials <= 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      body(t);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min(threads, trials);
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
}

}  // namespace

ComparisonResult run_comparison(const ExperimentConfig& config) {
  if (config.trials < 1) {
    throw ConfigError("run_comparison: need at least one trial");
  }
  ComparisonResult result;
  for (auto& strategy : result.per_trial) {
    for (auto& cond : strategy) cond.assign(config.trials, 0.0);
  }

  std::array<std::vector<double>, 3> first_cells;
  for_each_trial(config.trials, config.threads, [&](int trial) {
    const std::vector<Sensor> sensors = trial_deployment(config, trial);
    const VoronoiDiagram diagram =
        build_clipped_voronoi(sites_of(sensors), config.roi);
    std::vector<RrfReport> reports;
    reports.reserve(sensors.size());
    for (const VoronoiCell& cell : diagram.cells) {
      reports.push_back(sensor_rrf(cell));
    }

    const std::uint64_t trial_seed =
        derive_stream(config.seed, 0x7202ull + std::uint64_t(trial));

    std::array<OrientationSolution, 3> solutions;
    solutions[int(Strategy::kRandom)] =
        random_orientation(sensors, config.roi, trial_seed);
    solutions[int(Strategy::kIds)] =
        ids_orientation(sensors, config.roi, config.params);
    solutions[int(Strategy::kRobustified)] =
        run_integrated_algorithm(sensors, config.roi, config.params);

    // perturbed evaluation needs per-sensor rrf even for strategies that
    // never computed it
    solutions[int(Strategy::kRandom)].rrf_reports = reports;

    for (Strategy strategy : kAllStrategies) {
      OrientationSolution& sol = solutions[int(strategy)];
      result.per_trial[int(strategy)][int(Condition::kNominal)][trial] =
          nominal_evaluation(sensors, diagram, sol);
      result.per_trial[int(strategy)][int(Condition::kPerturbed)][trial] =
          perturbed_evaluation(sensors, diagram, sol,
                               PerturbMode::kAdversarial, config.perturbation,
                               trial_seed);
      if (trial == 0) {
        std::vector<double> cells;
        cells.reserve(sol.assignments.size());
        for (const OrientationAssignment& a : sol.assignments) {
          cells.push_back(a.covered_area);
        }
        first_cells[int(strategy)] = std::move(cells);
      }
    }
  });

  result.first_trial_per_cell = std::move(first_cells);
  for (int s = 0; s < 3; ++s) {
    for (int c = 0; c < 2; ++c) {
      double sum = 0.0;
      for (double v : result.per_trial[s][c]) sum += v;
      result.means[s][c] = sum / double(config.trials);
    }
  }
  return result;
}

namespace {

void apply_sweep_value(ExperimentConfig& config, const std::string& parameter,
                       double value) {
  if (parameter == "m") {
    config.m = int(std::llround(value));
    if (config.m < 1) throw ConfigError("sweep: m must be >= 1");
  } else if (parameter == "theta_h") {
    if (!(value > 0.0) || value > 360.0) {
      throw ConfigError("sweep: theta_h must lie in (0, 360] degrees");
    }
    config.theta_h = value * kPi / 180.0;
  } else if (parameter == "rho_max") {
    config.params.rho_max = value;
  } else if (parameter == "rho_min") {
    config.params.rho_min = value;
  } else if (parameter == "r_outer") {
    config.r_outer = value;
  } else if (parameter == "r_inner") {
    config.r_inner = value;
  } else {
    throw ConfigError("sweep: unknown parameter '" + parameter + "'");
  }
  if (config.r_inner < 0.0 || config.r_inner >= config.r_outer) {
    throw ConfigError("sweep: need 0 <= r_inner < r_outer");
  }
}

}  // namespace

std::vector<SweepRow> parametric_sweep(const ExperimentConfig& base,
                                       const std::string& parameter,
                                       std::span<const double> values) {
  if (values.empty()) throw ConfigError("sweep: no values given");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    ExperimentConfig config = base;
    apply_sweep_value(config, parameter, value);

    SweepRow row;
    row.parameter = parameter;
    row.value = value;
    row.per_trial.assign(config.trials, 0.0);
    for_each_trial(config.trials, config.threads, [&](int trial) {
      const std::vector<Sensor> sensors = trial_deployment(config, trial);
      const OrientationSolution solution =
          run_integrated_algorithm(sensors, config.roi, config.params);
      row.per_trial[trial] = solution.total_area;
    });
    double sum = 0.0;
    for (double v : row.per_trial) sum += v;
    row.mean = sum / double(config.trials);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rrfcov
