#include "rrfcov/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rrfcov/errors.hpp"
#include "rrfcov/rng.hpp"

namespace rrfcov {

namespace {

constexpr double kAreaQuantum = 1e-6;

AnnularSector footprint_at(const Sensor& sensor, Point2 apex,
                           double direction) {
  return make_sector(apex, sensor.r_inner, sensor.r_outer, sensor.theta_h,
                     direction);
}

}  // namespace

std::int64_t area_rank_key(double area) {
  return std::llround(area / kAreaQuantum);
}

bool candidate_precedes(const Candidate& a, const Candidate& b) {
  const std::int64_t ka = area_rank_key(a.area);
  const std::int64_t kb = area_rank_key(b.area);
  if (ka != kb) return ka > kb;
  if (a.direction != b.direction) return a.direction < b.direction;
  return a.vertex_index < b.vertex_index;
}

std::vector<CandidateDirection> candidate_directions(const Sensor& sensor,
                                                     const VoronoiCell& cell) {
  std::vector<CandidateDirection> out;
  const std::vector<Point2>& verts = cell.polygon.vertices;
  out.reserve(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    const Vec2 d = verts[i] - sensor.nominal;
    if (norm(d) <= kGeomEps) continue;  // direction undefined
    out.push_back({verts[i], normalize_angle(angle_of(d)), int(i)});
  }
  return out;
}

Candidate evaluate_candidate(const Sensor& sensor, const VoronoiCell& cell,
                             const CandidateDirection& cand, double shift) {
  const Point2 apex =
      sensor.nominal + shift * unit_vector(cand.direction);
  const AnnularSector footprint = footprint_at(sensor, apex, cand.direction);
  Candidate out;
  out.vertex = cand.vertex;
  out.direction = cand.direction;
  out.vertex_index = cand.vertex_index;
  out.effective_location = apex;
  out.area = sector_polygon_intersection_area(footprint, cell.polygon);
  return out;
}

OrientationAssignment select_orientation(const Sensor& sensor,
                                         const VoronoiCell& cell,
                                         ModelKind model,
                                         const AlgoParams& params,
                                         double shift) {
  OrientationAssignment asg;
  asg.sensor = sensor.id;

  std::vector<Candidate> ranked;
  for (const CandidateDirection& cd : candidate_directions(sensor, cell)) {
    ranked.push_back(evaluate_candidate(sensor, cell, cd, shift));
  }
  std::stable_sort(ranked.begin(), ranked.end(), candidate_precedes);
  asg.candidate_ranking = std::move(ranked);

  if (!asg.candidate_ranking.empty() &&
      asg.candidate_ranking.front().area >= params.lambda) {
    const Candidate& best = asg.candidate_ranking.front();
    asg.state = OrientationAssignment::State::kOriented;
    asg.direction = best.direction;
    asg.target_vertex = best.vertex;
    asg.effective_location = best.effective_location;
    asg.covered_area = best.area;
    return asg;
  }

  if (params.fallback == FallbackPolicy::kRandom) {
    RandomStream rng(params.fallback_seed, 0x0F00ull + std::uint64_t(sensor.id));
    const double direction = rng.next_angle();
    const Point2 apex = sensor.nominal + shift * unit_vector(direction);
    asg.state = OrientationAssignment::State::kRandom;
    asg.direction = direction;
    asg.effective_location = apex;
    asg.covered_area = sector_polygon_intersection_area(
        footprint_at(sensor, apex, direction), cell.polygon);
    return asg;
  }

  asg.state = OrientationAssignment::State::kSleep;
  asg.effective_location = sensor.nominal;
  asg.covered_area = 0.0;
  (void)model;
  return asg;
}

bool pairwise_overlap_trigger(const Sensor& a, const RrfReport& rrf_a,
                              const Sensor& b, const RrfReport& rrf_b,
                              double epsilon) {
  const double d = distance(a.nominal, b.nominal);
  return rrf_a.rrf + rrf_b.rrf + a.r_outer + b.r_outer - d > epsilon;
}

double solution_total_area(const OrientationSolution& solution) {
  double total = 0.0;
  for (const OrientationAssignment& a : solution.assignments) {
    total += a.covered_area;
  }
  return total;
}

namespace {

// Demote a sensor to the next candidate below its current rank; past the
// end of the ranking, or once areas fall below lambda, it sleeps.
void demote_to_next_candidate(OrientationAssignment& asg, size_t& cursor,
                              const Sensor& sensor, double lambda) {
  ++cursor;
  if (cursor < asg.candidate_ranking.size() &&
      asg.candidate_ranking[cursor].area >= lambda) {
    const Candidate& c = asg.candidate_ranking[cursor];
    asg.state = OrientationAssignment::State::kOriented;
    asg.direction = c.direction;
    asg.target_vertex = c.vertex;
    asg.effective_location = c.effective_location;
    asg.covered_area = c.area;
  } else {
    cursor = asg.candidate_ranking.size();
    asg.state = OrientationAssignment::State::kSleep;
    asg.effective_location = sensor.nominal;
    asg.covered_area = 0.0;
  }
}

}  // namespace

OrientationSolution cooperative_recalibration(OrientationSolution solution,
                                              const VoronoiDiagram& diagram,
                                              std::span<const Sensor> sensors,
                                              const AlgoParams& params) {
  if (solution.assignments.size() != sensors.size() ||
      solution.rrf_reports.size() != sensors.size()) {
    throw std::invalid_argument(
        "cooperative_recalibration: solution/sensor size mismatch");
  }

  const std::vector<std::pair<int, int>> pairs = shared_vertex_pairs(diagram);
  std::vector<size_t> cursor(sensors.size(), 0);
  std::vector<bool> pair_done(pairs.size(), false);

  int iterations = 0;
  while (iterations < params.max_iterations) {
    const double before = solution_total_area(solution);
    for (size_t k = 0; k < pairs.size(); ++k) {
      if (pair_done[k]) continue;
      const auto [i, j] = pairs[k];
      if (!pairwise_overlap_trigger(sensors[i], solution.rrf_reports[i],
                                    sensors[j], solution.rrf_reports[j],
                                    params.epsilon)) {
        continue;
      }
      pair_done[k] = true;
      OrientationAssignment& ai = solution.assignments[i];
      OrientationAssignment& aj = solution.assignments[j];
      const std::int64_t key_i = area_rank_key(ai.covered_area);
      const std::int64_t key_j = area_rank_key(aj.covered_area);
      // the smaller coverage moves; equal coverage moves the larger id
      const bool move_i = key_i < key_j || (key_i == key_j && i > j);
      if (move_i) {
        demote_to_next_candidate(ai, cursor[i], sensors[i], params.lambda);
      } else {
        demote_to_next_candidate(aj, cursor[j], sensors[j], params.lambda);
      }
    }
    ++iterations;
    const double after = solution_total_area(solution);
    if (std::abs(after - before) < params.delta) break;
  }

  solution.iterations = iterations;
  solution.total_area = solution_total_area(solution);
  return solution;
}

OrientationSolution run_integrated_algorithm(std::span<const Sensor> sensors,
                                             const Roi& roi,
                                             const AlgoParams& params) {
  if (sensors.empty()) {
    throw InfeasibleError("run_integrated_algorithm: no sensors");
  }
  std::vector<Point2> sites;
  sites.reserve(sensors.size());
  for (const Sensor& s : sensors) sites.push_back(s.nominal);
  const VoronoiDiagram diagram = build_clipped_voronoi(sites, roi);

  OrientationSolution solution;
  solution.rrf_reports.reserve(sensors.size());
  for (const VoronoiCell& cell : diagram.cells) {
    solution.rrf_reports.push_back(sensor_rrf(cell));
  }

  const double network_rrf = min_network_rrf(solution.rrf_reports);
  const bool all_robust = network_rrf > params.rho_min;
  solution.branch_taken = all_robust
                              ? OrientationSolution::Branch::kRobustCounterpart
                              : OrientationSolution::Branch::kRobustified;
  solution.model = all_robust ? ModelKind::kRobustCounterpart
                              : ModelKind::kRobustified;

  solution.assignments.reserve(sensors.size());
  for (size_t i = 0; i < sensors.size(); ++i) {
    const double rrf = solution.rrf_reports[i].rrf;
    const bool robust = rrf > params.rho_min;
    const ModelKind model =
        robust ? ModelKind::kRobustCounterpart : ModelKind::kRobustified;
    const double shift =
        robust ? std::min(rrf, params.rho_max) : params.rho_min;
    OrientationAssignment asg =
        select_orientation(sensors[i], diagram.cells[i], model, params, shift);
    asg.branch = model;
    if (!robust && asg.state != OrientationAssignment::State::kOriented) {
      asg.rrf_violation = true;  // no candidate survived the lambda cut
    }
    solution.assignments.push_back(std::move(asg));
  }

  solution = cooperative_recalibration(std::move(solution), diagram, sensors,
                                       params);
  return solution;
}

}  // namespace rrfcov
