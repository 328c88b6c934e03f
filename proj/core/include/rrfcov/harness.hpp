// Experiment harness: randomized deployments, the baseline orientation
// strategies, perturbed re-evaluation, and the comparison / parameter-sweep
// drivers behind the CLI.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrfcov/orientation.hpp"

namespace rrfcov {

struct ExperimentConfig {
  int m = 150;
  Roi roi{{0.0, 0.0}, {1000.0, 1000.0}};
  double r_inner = 25.0;
  double r_outer = 80.0;
  double theta_h = kPi / 3.0;  // 60 degrees
  double margin = 1.0;
  AlgoParams params;
  std::uint64_t seed = 1;
  int trials = 100;
  // displacement magnitude for perturbed evaluation; empty means each
  // sensor's own rrf
  std::optional<double> perturbation;
  int threads = 1;
  // explicit deployment instead of random sites
  std::optional<std::vector<Sensor>> explicit_sensors;
};

enum class Strategy : int { kRandom = 0, kIds = 1, kRobustified = 2 };
enum class Condition : int { kNominal = 0, kPerturbed = 1 };
enum class PerturbMode { kAdversarial, kRandomDirection };

inline constexpr std::array<Strategy, 3> kAllStrategies = {
    Strategy::kRandom, Strategy::kIds, Strategy::kRobustified};
const char* to_string(Strategy s);
const char* to_string(Condition c);

struct ComparisonResult {
  // indexed [strategy][condition]
  std::array<std::array<std::vector<double>, 2>, 3> per_trial;
  std::array<std::array<double, 2>, 3> means{};
  // per-sensor covered areas of trial 0, for distribution plots
  std::array<std::vector<double>, 3> first_trial_per_cell;
};

struct SweepRow {
  std::string parameter;
  double value = 0.0;
  double mean = 0.0;
  std::vector<double> per_trial;
};

// m sensors i.i.d. uniform over the margin-inset region, counter-based on
// (seed, index, attempt). Sites closer than 1e-6 to an earlier site are
// resampled; 1000 failed attempts raise InfeasibleError.
std::vector<Sensor> random_deployment(int m, const Roi& roi,
                                      std::uint64_t seed, double margin,
                                      double r_inner, double r_outer,
                                      double theta_h);

// The deployment a given trial of this config runs on: the explicit sensor
// list when present, otherwise a trial-seeded random deployment.
std::vector<Sensor> trial_deployment(const ExperimentConfig& config,
                                     int trial);

// Greedy nominal-evaluation baseline: max-area vertex at shift 0, then
// cooperative recalibration.
OrientationSolution ids_orientation(std::span<const Sensor> sensors,
                                    const Roi& roi, const AlgoParams& params);

// Uniform random directions, evaluated at the nominal location; no
// recalibration.
OrientationSolution random_orientation(std::span<const Sensor> sensors,
                                       const Roi& roi, std::uint64_t seed);

// Re-evaluates a solution's chosen directions with every apex displaced,
// keeping cells fixed at the nominal partition. Adversarial mode displaces
// along each sensor's chosen direction; random mode along an i.i.d. uniform
// direction. `magnitude` empty means each sensor's own rrf.
double perturbed_evaluation(std::span<const Sensor> sensors,
                            const VoronoiDiagram& diagram,
                            const OrientationSolution& solution,
                            PerturbMode mode, std::optional<double> magnitude,
                            std::uint64_t seed);

// Nominal re-evaluation of the chosen directions (shift 0 for every sensor).
double nominal_evaluation(std::span<const Sensor> sensors,
                          const VoronoiDiagram& diagram,
                          const OrientationSolution& solution);

// Runs all three strategies across config.trials independent deployments
// and evaluates each under the nominal and perturbed conditions.
ComparisonResult run_comparison(const ExperimentConfig& config);

// Re-runs the robustified pipeline for each parameter value, averaging the
// solution's own total area over config.trials deployments. Values are in
// config-file units (degrees for theta_h).
std::vector<SweepRow> parametric_sweep(const ExperimentConfig& base,
                                       const std::string& parameter,
                                       std::span<const double> values);

}  // namespace rrfcov
