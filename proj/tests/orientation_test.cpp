#include "rrfcov/orientation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "rrfcov/errors.hpp"

namespace rrfcov {
namespace {

Roi unit_roi() { return Roi{{0.0, 0.0}, {1000.0, 1000.0}}; }

VoronoiCell single_cell(Point2 site) {
  auto diagram = build_clipped_voronoi(std::vector<Point2>{site}, unit_roi());
  return diagram.cells[0];
}

AlgoParams loose_params() {
  AlgoParams p;
  p.epsilon = 1.0;
  p.delta = 1e-9;
  p.lambda = 1.0;
  p.rho_min = 10.0;
  return p;
}

TEST(AreaRankKey, QuantizesToMicroUnits) {
  EXPECT_EQ(area_rank_key(1.0), area_rank_key(1.0 + 4e-7));
  EXPECT_NE(area_rank_key(1.0), area_rank_key(1.0 + 6e-7));
  EXPECT_EQ(area_rank_key(0.0), 0);
}

TEST(CandidatePrecedes, AreaThenDirectionThenIndex) {
  Candidate big, small;
  big.area = 10.0;
  small.area = 5.0;
  EXPECT_TRUE(candidate_precedes(big, small));
  EXPECT_FALSE(candidate_precedes(small, big));

  Candidate east, west;
  east.area = west.area = 7.0;
  east.direction = 0.1;
  west.direction = 2.9;
  EXPECT_TRUE(candidate_precedes(east, west));

  Candidate first, second;
  first.area = second.area = 7.0;
  first.direction = second.direction = 0.5;
  first.vertex_index = 0;
  second.vertex_index = 3;
  EXPECT_TRUE(candidate_precedes(first, second));
}

TEST(CandidateDirections, OnePerVertexTowardIt) {
  Sensor sensor{0, {500.0, 500.0}, 0.0, 80.0, kPi / 2.0};
  const auto cell = single_cell(sensor.nominal);
  const auto cands = candidate_directions(sensor, cell);

  ASSERT_EQ(cands.size(), 4u);
  std::multiset<double> dirs;
  for (const auto& c : cands) {
    dirs.insert(c.direction);
    // the direction points exactly at the vertex
    const Vec2 d = c.vertex - sensor.nominal;
    EXPECT_NEAR(normalize_angle(angle_of(d)), c.direction, 1e-12);
    EXPECT_EQ(cell.polygon.vertices[c.vertex_index].x, c.vertex.x);
  }
  const std::vector<double> expected{-3.0 * kPi / 4.0, -kPi / 4.0, kPi / 4.0,
                                     3.0 * kPi / 4.0};
  auto it = dirs.begin();
  for (double want : expected) {
    EXPECT_NEAR(*it++, want, 1e-12);
  }
}

TEST(CandidateDirections, SkipsVertexAtNominalLocation) {
  Sensor sensor{0, {0.0, 0.0}, 0.0, 1.0, kPi};
  VoronoiCell cell;
  cell.owner = 0;
  cell.site = sensor.nominal;
  cell.polygon = ConvexPolygon::from_ccw_vertices(
      {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  const auto cands = candidate_directions(sensor, cell);
  ASSERT_EQ(cands.size(), 3u);
  for (const auto& c : cands) EXPECT_NE(c.vertex_index, 0);
}

TEST(EvaluateCandidate, DisplacesApexAlongDirection) {
  Sensor sensor{0, {500.0, 500.0}, 0.0, 100.0, kTwoPi};
  const auto cell = single_cell(sensor.nominal);
  const CandidateDirection cand{{1000.0, 500.0}, 0.0, 0};

  const Candidate at_rest = evaluate_candidate(sensor, cell, cand, 0.0);
  EXPECT_NEAR(at_rest.effective_location.x, 500.0, 1e-12);
  EXPECT_NEAR(at_rest.area, kPi * 100.0 * 100.0, 1e-6);

  const Candidate shifted = evaluate_candidate(sensor, cell, cand, 50.0);
  EXPECT_NEAR(shifted.effective_location.x, 550.0, 1e-12);
  EXPECT_NEAR(shifted.effective_location.y, 500.0, 1e-12);
  EXPECT_NEAR(shifted.area, kPi * 100.0 * 100.0, 1e-6);
}

TEST(SelectOrientation, EqualCandidatesBreakTowardSmallestDirection) {
  // all four corner wedges fit inside the cell, so areas tie exactly and
  // the smallest normalized bearing wins
  Sensor sensor{0, {500.0, 500.0}, 0.0, 50.0, kPi / 2.0};
  const auto cell = single_cell(sensor.nominal);
  const auto asg =
      select_orientation(sensor, cell, ModelKind::kNominal, loose_params(), 0.0);

  ASSERT_EQ(asg.state, OrientationAssignment::State::kOriented);
  EXPECT_NEAR(asg.direction, -3.0 * kPi / 4.0, 1e-12);
  EXPECT_NEAR(asg.covered_area, (kPi / 4.0) * 50.0 * 50.0, 1e-9);
  EXPECT_EQ(asg.candidate_ranking.size(), 4u);
  EXPECT_FALSE(asg.branch.has_value());
  EXPECT_FALSE(asg.rrf_violation);
}

TEST(SelectOrientation, SleepsWhenBestFallsBelowLambda) {
  Sensor sensor{3, {500.0, 500.0}, 0.0, 10.0, kPi / 2.0};
  const auto cell = single_cell(sensor.nominal);
  AlgoParams params = loose_params();
  params.lambda = 1e6;  // unreachable
  const auto asg =
      select_orientation(sensor, cell, ModelKind::kNominal, params, 0.0);

  EXPECT_EQ(asg.state, OrientationAssignment::State::kSleep);
  EXPECT_EQ(asg.covered_area, 0.0);
  EXPECT_EQ(asg.effective_location.x, sensor.nominal.x);
  EXPECT_FALSE(asg.candidate_ranking.empty());
}

TEST(SelectOrientation, RandomFallbackIsSeedDeterministic) {
  Sensor sensor{5, {500.0, 500.0}, 0.0, 10.0, kPi / 2.0};
  const auto cell = single_cell(sensor.nominal);
  AlgoParams params = loose_params();
  params.lambda = 1e6;
  params.fallback = FallbackPolicy::kRandom;
  params.fallback_seed = 42;

  const auto a =
      select_orientation(sensor, cell, ModelKind::kNominal, params, 0.0);
  const auto b =
      select_orientation(sensor, cell, ModelKind::kNominal, params, 0.0);
  ASSERT_EQ(a.state, OrientationAssignment::State::kRandom);
  EXPECT_EQ(a.direction, b.direction);
  EXPECT_GT(a.direction, -kPi);
  EXPECT_LE(a.direction, kPi);
  EXPECT_GT(a.covered_area, 0.0);  // evaluated, not assumed

  params.fallback_seed = 43;
  const auto c =
      select_orientation(sensor, cell, ModelKind::kNominal, params, 0.0);
  EXPECT_NE(a.direction, c.direction);

  Sensor other = sensor;
  other.id = 6;
  params.fallback_seed = 42;
  const auto d =
      select_orientation(other, cell, ModelKind::kNominal, params, 0.0);
  EXPECT_NE(a.direction, d.direction);
}

TEST(PairwiseOverlapTrigger, StrictInequality) {
  Sensor a{0, {0.0, 0.0}, 0.0, 30.0, kPi};
  Sensor b{1, {100.0, 0.0}, 0.0, 30.0, kPi};
  RrfReport ra, rb;
  ra.rrf = rb.rrf = 20.0;
  // 20 + 20 + 30 + 30 - 100 = 0
  EXPECT_FALSE(pairwise_overlap_trigger(a, ra, b, rb, 0.0));
  ra.rrf = 21.0;  // sum - d = 1
  EXPECT_FALSE(pairwise_overlap_trigger(a, ra, b, rb, 1.0));
  EXPECT_TRUE(pairwise_overlap_trigger(a, ra, b, rb, 0.5));
}

// two mirrored sensors whose footprints overlap; the recalibration sweep
// demotes exactly one of them to its second-ranked candidate
class RecalibrationFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    sensors_ = {{0, {400.0, 500.0}, 0.0, 350.0, kPi / 2.0},
                {1, {600.0, 500.0}, 0.0, 350.0, kPi / 2.0}};
    std::vector<Point2> sites{sensors_[0].nominal, sensors_[1].nominal};
    diagram_ = build_clipped_voronoi(sites, unit_roi());
    params_ = loose_params();
    params_.max_iterations = 10;

    solution_.rrf_reports = {sensor_rrf(diagram_.cells[0]),
                             sensor_rrf(diagram_.cells[1])};
    for (int i = 0; i < 2; ++i) {
      solution_.assignments.push_back(select_orientation(
          sensors_[i], diagram_.cells[i], ModelKind::kNominal, params_, 0.0));
    }
  }

  std::vector<Sensor> sensors_;
  VoronoiDiagram diagram_;
  AlgoParams params_;
  OrientationSolution solution_;
};

TEST_F(RecalibrationFixture, EqualCoverageDemotesLargerId) {
  solution_.assignments[0].covered_area = 100.0;
  solution_.assignments[1].covered_area = 100.0;
  const double runner_up = solution_.assignments[1].candidate_ranking[1].area;

  const auto out = cooperative_recalibration(std::move(solution_), diagram_,
                                             sensors_, params_);
  EXPECT_DOUBLE_EQ(out.assignments[0].covered_area, 100.0);
  EXPECT_DOUBLE_EQ(out.assignments[1].covered_area, runner_up);
  EXPECT_EQ(out.assignments[1].state, OrientationAssignment::State::kOriented);
  EXPECT_EQ(out.iterations, 2);  // second sweep confirms convergence
  EXPECT_DOUBLE_EQ(out.total_area, 100.0 + runner_up);
}

TEST_F(RecalibrationFixture, SmallerCoverageMovesFirst) {
  solution_.assignments[0].covered_area = 50.0;
  solution_.assignments[1].covered_area = 100.0;
  const double runner_up = solution_.assignments[0].candidate_ranking[1].area;

  const auto out = cooperative_recalibration(std::move(solution_), diagram_,
                                             sensors_, params_);
  EXPECT_DOUBLE_EQ(out.assignments[0].covered_area, runner_up);
  EXPECT_DOUBLE_EQ(out.assignments[1].covered_area, 100.0);
}

TEST_F(RecalibrationFixture, ExhaustedRankingSleeps) {
  solution_.assignments[1].covered_area =
      solution_.assignments[0].covered_area = 100.0;
  AlgoParams harsh = params_;
  harsh.lambda = 1e9;  // every demotion target is below the cut

  const auto out = cooperative_recalibration(std::move(solution_), diagram_,
                                             sensors_, harsh);
  EXPECT_EQ(out.assignments[1].state, OrientationAssignment::State::kSleep);
  EXPECT_EQ(out.assignments[1].covered_area, 0.0);
  EXPECT_EQ(out.assignments[0].covered_area, 100.0);
}

TEST_F(RecalibrationFixture, PairActedOnAtMostOnce) {
  // ten allowed iterations, but the single pair fires once and the next
  // sweep is a no-op, so the loop exits after two
  const auto out = cooperative_recalibration(std::move(solution_), diagram_,
                                             sensors_, params_);
  EXPECT_LE(out.iterations, 2);
}

TEST(CooperativeRecalibration, RejectsSizeMismatch) {
  const auto diagram = build_clipped_voronoi(
      std::vector<Point2>{{500.0, 500.0}}, unit_roi());
  const std::vector<Sensor> sensors{{0, {500.0, 500.0}, 0.0, 10.0, kPi}};
  OrientationSolution empty;
  EXPECT_THROW(cooperative_recalibration(std::move(empty), diagram, sensors,
                                         AlgoParams{}),
               std::invalid_argument);
}

TEST(RunIntegratedAlgorithm, RobustBranchShiftsByRrfCappedAtRhoMax) {
  const std::vector<Sensor> sensors{{0, {500.0, 500.0}, 0.0, 100.0, kTwoPi}};
  AlgoParams params = loose_params();  // rho_min 10 < rrf 500

  const auto sol = run_integrated_algorithm(sensors, unit_roi(), params);
  EXPECT_EQ(sol.branch_taken, OrientationSolution::Branch::kRobustCounterpart);
  EXPECT_EQ(sol.model, ModelKind::kRobustCounterpart);
  ASSERT_EQ(sol.assignments.size(), 1u);
  const auto& asg = sol.assignments[0];
  ASSERT_EQ(asg.state, OrientationAssignment::State::kOriented);
  EXPECT_EQ(asg.branch, ModelKind::kRobustCounterpart);
  EXPECT_NEAR(distance(asg.effective_location, sensors[0].nominal), 500.0,
              1e-9);
  EXPECT_FALSE(asg.rrf_violation);
  EXPECT_NEAR(sol.rrf_reports[0].rrf, 500.0, 1e-12);

  params.rho_max = 50.0;
  const auto capped = run_integrated_algorithm(sensors, unit_roi(), params);
  EXPECT_NEAR(distance(capped.assignments[0].effective_location,
                       sensors[0].nominal),
              50.0, 1e-9);
}

TEST(RunIntegratedAlgorithm, LowRrfTakesRobustifiedBranch) {
  const std::vector<Sensor> sensors{{0, {500.0, 500.0}, 0.0, 100.0, kTwoPi}};
  AlgoParams params = loose_params();
  params.rho_min = 600.0;  // above the 500 wall slack

  const auto sol = run_integrated_algorithm(sensors, unit_roi(), params);
  EXPECT_EQ(sol.branch_taken, OrientationSolution::Branch::kRobustified);
  EXPECT_EQ(sol.model, ModelKind::kRobustified);
  const auto& asg = sol.assignments[0];
  EXPECT_EQ(asg.branch, ModelKind::kRobustified);
  ASSERT_EQ(asg.state, OrientationAssignment::State::kOriented);
  // oriented despite the violation: flag stays clear
  EXPECT_FALSE(asg.rrf_violation);
  EXPECT_NEAR(distance(asg.effective_location, sensors[0].nominal), 600.0,
              1e-9);
}

TEST(RunIntegratedAlgorithm, FlagsUnorientableLowRrfSensor) {
  const std::vector<Sensor> sensors{{0, {500.0, 500.0}, 0.0, 100.0, kTwoPi}};
  AlgoParams params = loose_params();
  params.rho_min = 600.0;
  params.lambda = 1e9;

  const auto sol = run_integrated_algorithm(sensors, unit_roi(), params);
  EXPECT_EQ(sol.assignments[0].state, OrientationAssignment::State::kSleep);
  EXPECT_TRUE(sol.assignments[0].rrf_violation);
}

TEST(RunIntegratedAlgorithm, MixedRrfsStillBranchOnNetworkMinimum) {
  // one sensor hugs a wall: its rrf of 40 drags the whole run into the
  // shifted-by-rho-min branch even though the center sensor is comfortable
  const std::vector<Sensor> sensors{{0, {40.0, 500.0}, 0.0, 80.0, kPi},
                                    {1, {600.0, 500.0}, 0.0, 80.0, kPi}};
  AlgoParams params = loose_params();
  params.rho_min = 100.0;

  const auto sol = run_integrated_algorithm(sensors, unit_roi(), params);
  EXPECT_EQ(sol.branch_taken, OrientationSolution::Branch::kRobustified);
  EXPECT_EQ(sol.assignments[0].branch, ModelKind::kRobustified);
  EXPECT_EQ(sol.assignments[1].branch, ModelKind::kRobustCounterpart);
}

TEST(RunIntegratedAlgorithm, TotalsAreConsistent) {
  const std::vector<Sensor> sensors{{0, {300.0, 300.0}, 0.0, 150.0, kPi / 2.0},
                                    {1, {700.0, 300.0}, 0.0, 150.0, kPi / 2.0},
                                    {2, {500.0, 800.0}, 0.0, 150.0, kPi / 2.0}};
  const auto sol =
      run_integrated_algorithm(sensors, unit_roi(), loose_params());

  EXPECT_EQ(sol.assignments.size(), 3u);
  EXPECT_EQ(sol.rrf_reports.size(), 3u);
  EXPECT_GE(sol.iterations, 1);
  double sum = 0.0;
  for (const auto& a : sol.assignments) sum += a.covered_area;
  EXPECT_DOUBLE_EQ(sol.total_area, sum);
  EXPECT_DOUBLE_EQ(solution_total_area(sol), sum);
}

TEST(RunIntegratedAlgorithm, RejectsEmptyNetwork) {
  const std::vector<Sensor> none;
  EXPECT_THROW(run_integrated_algorithm(none, unit_roi(), AlgoParams{}),
               InfeasibleError);
}

}  // namespace
}  // namespace rrfcov
