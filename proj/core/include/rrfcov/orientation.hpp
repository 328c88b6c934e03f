// Orientation planning: per-sensor candidate directions (one per cell
// vertex), worst-case evaluation under a location shift, greedy selection,
// and the cooperative recalibration pass that resolves crowded neighbors.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rrfcov/robust.hpp"
#include "rrfcov/voronoi.hpp"

namespace rrfcov {

struct Sensor {
  int id = -1;
  Point2 nominal;
  double r_inner = 0.0;
  double r_outer = 1.0;
  double theta_h = kTwoPi;  // full aperture, in (0, 2*pi]
};

enum class ModelKind {
  kNominal,            // evaluate at the nominal location (shift 0)
  kRobustCounterpart,  // shift by the sensor's own rrf (capped by rho_max)
  kRobustified,        // shift by rho_min, low-value candidates discarded
};

enum class FallbackPolicy { kSleep, kRandom };

struct AlgoParams {
  double epsilon = 1.0;  // pairwise-overlap trigger threshold
  double delta = 1.0;    // recalibration convergence threshold, square units
  double lambda = 1.0;   // minimum useful covered area, square units
  double rho_min = 10.0;
  double rho_max = std::numeric_limits<double>::infinity();
  int max_iterations = 100;
  FallbackPolicy fallback = FallbackPolicy::kSleep;
  std::uint64_t fallback_seed = 0;
};

struct CandidateDirection {
  Point2 vertex;
  double direction = 0.0;
  int vertex_index = -1;
};

struct Candidate {
  Point2 vertex;
  double direction = 0.0;
  int vertex_index = -1;
  double area = 0.0;
  Point2 effective_location;
};

struct OrientationAssignment {
  enum class State { kOriented, kSleep, kRandom };

  int sensor = -1;
  State state = State::kSleep;
  double direction = 0.0;       // oriented / random
  Point2 target_vertex;         // oriented
  Point2 effective_location;    // where covered_area was evaluated
  double covered_area = 0.0;
  std::vector<Candidate> candidate_ranking;  // best first
  std::optional<ModelKind> branch;           // set by the integrated run
  bool rrf_violation = false;
};

struct OrientationSolution {
  enum class Branch { kNone, kRobustCounterpart, kRobustified };

  std::vector<OrientationAssignment> assignments;
  ModelKind model = ModelKind::kNominal;
  double total_area = 0.0;
  int iterations = 0;
  std::vector<RrfReport> rrf_reports;
  Branch branch_taken = Branch::kNone;
};

// Ranking keys: areas are compared on a 1e-6-square-unit grid so that
// symmetric candidates tie deterministically; ties break toward the smaller
// normalized direction, then the lower vertex index.
std::int64_t area_rank_key(double area);
bool candidate_precedes(const Candidate& a, const Candidate& b);

// One candidate per cell vertex, in vertex order; vertices within kGeomEps
// of the nominal location carry no direction and are skipped.
std::vector<CandidateDirection> candidate_directions(const Sensor& sensor,
                                                     const VoronoiCell& cell);

// Footprint area inside the cell with the apex displaced `shift` ground
// units along `direction`. Returns the effective location and the area.
Candidate evaluate_candidate(const Sensor& sensor, const VoronoiCell& cell,
                             const CandidateDirection& cand, double shift);

// Ranks all candidates and orients toward the best one if it reaches
// params.lambda; otherwise the sensor sleeps (or takes a seeded random
// direction under FallbackPolicy::kRandom).
OrientationAssignment select_orientation(const Sensor& sensor,
                                         const VoronoiCell& cell,
                                         ModelKind model,
                                         const AlgoParams& params,
                                         double shift);

// rho_i + rho_j + R_i + R_j - |s_i - s_j| > epsilon, strictly.
bool pairwise_overlap_trigger(const Sensor& a, const RrfReport& rrf_a,
                              const Sensor& b, const RrfReport& rrf_b,
                              double epsilon);

// Sweeps every vertex-sharing pair whose overlap trigger fires and demotes
// the smaller-coverage sensor to its next-ranked candidate. The trigger
// depends only on geometry, so each pair is acted on at most once per run;
// sweeps repeat until the total-area change drops below params.delta or
// params.max_iterations is reached. A sensor that exhausts its ranking (or
// reaches candidates below params.lambda) goes to sleep.
OrientationSolution cooperative_recalibration(OrientationSolution solution,
                                              const VoronoiDiagram& diagram,
                                              std::span<const Sensor> sensors,
                                              const AlgoParams& params);

// Full pipeline: Voronoi partition at the nominal sites, per-sensor rrf,
// branch per sensor (rrf > rho_min: robust-counterpart shift, else
// robustified shift with rrf_violation flagging), then cooperative
// recalibration.
OrientationSolution run_integrated_algorithm(std::span<const Sensor> sensors,
                                             const Roi& roi,
                                             const AlgoParams& params);

double solution_total_area(const OrientationSolution& solution);

}  // namespace rrfcov
