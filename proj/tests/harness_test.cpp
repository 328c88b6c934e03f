#include "rrfcov/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rrfcov/errors.hpp"

namespace rrfcov {
namespace {

Roi unit_roi() { return Roi{{0.0, 0.0}, {1000.0, 1000.0}}; }

TEST(RandomDeployment, DeterministicAndWithinMargin) {
  const auto a = random_deployment(60, unit_roi(), 7, 25.0, 10.0, 90.0, kPi);
  const auto b = random_deployment(60, unit_roi(), 7, 25.0, 10.0, 90.0, kPi);
  ASSERT_EQ(a.size(), 60u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, int(i));
    EXPECT_EQ(a[i].nominal.x, b[i].nominal.x);
    EXPECT_EQ(a[i].nominal.y, b[i].nominal.y);
    EXPECT_GE(a[i].nominal.x, 25.0);
    EXPECT_LE(a[i].nominal.x, 975.0);
    EXPECT_GE(a[i].nominal.y, 25.0);
    EXPECT_LE(a[i].nominal.y, 975.0);
    EXPECT_EQ(a[i].r_inner, 10.0);
    EXPECT_EQ(a[i].r_outer, 90.0);
    EXPECT_EQ(a[i].theta_h, kPi);
  }

  const auto c = random_deployment(60, unit_roi(), 8, 25.0, 10.0, 90.0, kPi);
  bool any_moved = false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].nominal.x != c[i].nominal.x) any_moved = true;
  }
  EXPECT_TRUE(any_moved);
}

TEST(RandomDeployment, SitesStayPairwiseSeparated) {
  const auto sensors =
      random_deployment(200, unit_roi(), 3, 1.0, 0.0, 50.0, kPi);
  for (size_t i = 0; i < sensors.size(); ++i) {
    for (size_t j = i + 1; j < sensors.size(); ++j) {
      EXPECT_GT(distance(sensors[i].nominal, sensors[j].nominal), 1e-6);
    }
  }
}

TEST(RandomDeployment, RejectsImpossibleRequests) {
  EXPECT_THROW(random_deployment(0, unit_roi(), 1, 1.0, 0.0, 50.0, kPi),
               InfeasibleError);
  EXPECT_THROW(random_deployment(5, unit_roi(), 1, 500.0, 0.0, 50.0, kPi),
               InfeasibleError);
}

TEST(TrialDeployment, ExplicitSensorsBypassRandomPlacement) {
  ExperimentConfig config;
  config.explicit_sensors = std::vector<Sensor>{
      {0, {100.0, 100.0}, 0.0, 50.0, kPi},
      {1, {900.0, 900.0}, 0.0, 50.0, kPi}};
  const auto t0 = trial_deployment(config, 0);
  const auto t5 = trial_deployment(config, 5);
  ASSERT_EQ(t0.size(), 2u);
  EXPECT_EQ(t0[0].nominal.x, 100.0);
  EXPECT_EQ(t5[1].nominal.y, 900.0);
}

TEST(TrialDeployment, TrialsAreIndependentButReproducible) {
  ExperimentConfig config;
  config.m = 20;
  config.seed = 11;
  const auto t0a = trial_deployment(config, 0);
  const auto t0b = trial_deployment(config, 0);
  const auto t1 = trial_deployment(config, 1);
  ASSERT_EQ(t0a.size(), 20u);
  EXPECT_EQ(t0a[7].nominal.x, t0b[7].nominal.x);
  bool differs = false;
  for (int i = 0; i < 20; ++i) {
    if (t0a[i].nominal.x != t1[i].nominal.x) differs = true;
  }
  EXPECT_TRUE(differs);
}

TEST(IdsOrientation, GreedyNominalStructure) {
  const std::vector<Sensor> sensors{{0, {300.0, 500.0}, 0.0, 120.0, kPi / 2.0},
                                    {1, {700.0, 500.0}, 0.0, 120.0, kPi / 2.0}};
  AlgoParams params;
  const auto sol = ids_orientation(sensors, unit_roi(), params);

  EXPECT_EQ(sol.model, ModelKind::kNominal);
  EXPECT_EQ(sol.branch_taken, OrientationSolution::Branch::kNone);
  ASSERT_EQ(sol.assignments.size(), 2u);
  ASSERT_EQ(sol.rrf_reports.size(), 2u);
  for (const auto& asg : sol.assignments) {
    if (asg.state == OrientationAssignment::State::kOriented) {
      // greedy selection evaluates at the nominal location
      EXPECT_EQ(asg.effective_location.x,
                sensors[asg.sensor].nominal.x);
    }
    EXPECT_FALSE(asg.branch.has_value());
  }
}

TEST(RandomOrientation, SeededDirectionsWithoutRecalibration) {
  const std::vector<Sensor> sensors{{0, {300.0, 500.0}, 0.0, 120.0, kPi / 2.0},
                                    {1, {700.0, 500.0}, 0.0, 120.0, kPi / 2.0}};
  const auto a = random_orientation(sensors, unit_roi(), 99);
  const auto b = random_orientation(sensors, unit_roi(), 99);

  EXPECT_EQ(a.iterations, 0);
  ASSERT_EQ(a.assignments.size(), 2u);
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a.assignments[i].state, OrientationAssignment::State::kRandom);
    EXPECT_EQ(a.assignments[i].direction, b.assignments[i].direction);
    EXPECT_GT(a.assignments[i].direction, -kPi);
    EXPECT_LE(a.assignments[i].direction, kPi);
    EXPECT_GE(a.assignments[i].covered_area, 0.0);
  }
  EXPECT_DOUBLE_EQ(a.total_area, a.assignments[0].covered_area +
                                     a.assignments[1].covered_area);
  EXPECT_NE(a.assignments[0].direction, a.assignments[1].direction);
}

class EvaluationFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    sensors_ = {{0, {500.0, 500.0}, 0.0, 100.0, kTwoPi}};
    diagram_ = build_clipped_voronoi(
        std::vector<Point2>{sensors_[0].nominal}, unit_roi());
    solution_ = ids_orientation(sensors_, unit_roi(), AlgoParams{});
  }

  std::vector<Sensor> sensors_;
  VoronoiDiagram diagram_;
  OrientationSolution solution_;
};

TEST_F(EvaluationFixture, NominalEvaluationMatchesGreedyTotals) {
  EXPECT_DOUBLE_EQ(nominal_evaluation(sensors_, diagram_, solution_),
                   solution_.total_area);
  EXPECT_NEAR(solution_.total_area, kPi * 100.0 * 100.0, 1e-6);
}

TEST_F(EvaluationFixture, ZeroMagnitudeEqualsNominal) {
  const double perturbed = perturbed_evaluation(
      sensors_, diagram_, solution_, PerturbMode::kAdversarial, 0.0, 1);
  EXPECT_DOUBLE_EQ(perturbed,
                   nominal_evaluation(sensors_, diagram_, solution_));
}

TEST_F(EvaluationFixture, AdversarialShiftMovesAlongChosenDirection) {
  const auto& asg = solution_.assignments[0];
  ASSERT_EQ(asg.state, OrientationAssignment::State::kOriented);

  const double magnitude = 600.0;
  const Point2 apex =
      sensors_[0].nominal + magnitude * unit_vector(asg.direction);
  const auto footprint =
      make_sector(apex, 0.0, 100.0, kTwoPi, asg.direction);
  const double expected = sector_polygon_intersection_area(
      footprint, diagram_.cells[0].polygon);

  const double perturbed =
      perturbed_evaluation(sensors_, diagram_, solution_,
                           PerturbMode::kAdversarial, magnitude, 1);
  EXPECT_DOUBLE_EQ(perturbed, expected);
  EXPECT_LT(perturbed, solution_.total_area);
}

TEST_F(EvaluationFixture, DefaultMagnitudeIsEachSensorsRrf) {
  // the centered sensor's rrf is 500, so leaving the magnitude empty must
  // reproduce an explicit 500-unit shift
  const double by_rrf = perturbed_evaluation(
      sensors_, diagram_, solution_, PerturbMode::kAdversarial, {}, 1);
  const double by_value = perturbed_evaluation(
      sensors_, diagram_, solution_, PerturbMode::kAdversarial, 500.0, 1);
  EXPECT_DOUBLE_EQ(by_rrf, by_value);

  OrientationSolution no_reports = solution_;
  no_reports.rrf_reports.clear();
  EXPECT_THROW(perturbed_evaluation(sensors_, diagram_, no_reports,
                                    PerturbMode::kAdversarial, {}, 1),
               std::invalid_argument);
}

TEST_F(EvaluationFixture, RandomModeIsSeedDeterministic) {
  const double a = perturbed_evaluation(
      sensors_, diagram_, solution_, PerturbMode::kRandomDirection, 480.0, 5);
  const double b = perturbed_evaluation(
      sensors_, diagram_, solution_, PerturbMode::kRandomDirection, 480.0, 5);
  EXPECT_DOUBLE_EQ(a, b);
}

TEST_F(EvaluationFixture, SleepingSensorsContributeNothing) {
  AlgoParams harsh;
  harsh.lambda = 1e9;
  const auto asleep = ids_orientation(sensors_, unit_roi(), harsh);
  ASSERT_EQ(asleep.assignments[0].state,
            OrientationAssignment::State::kSleep);
  EXPECT_EQ(perturbed_evaluation(sensors_, diagram_, asleep,
                                 PerturbMode::kAdversarial, 100.0, 1),
            0.0);
}

TEST(RunComparison, ShapesMeansAndDeterminism) {
  ExperimentConfig config;
  config.m = 10;
  config.trials = 4;
  config.seed = 21;
  config.r_inner = 10.0;
  config.r_outer = 90.0;
  config.threads = 1;

  const auto serial = run_comparison(config);
  for (int s = 0; s < 3; ++s) {
    ASSERT_EQ(serial.first_trial_per_cell[s].size(), 10u);
    for (int c = 0; c < 2; ++c) {
      ASSERT_EQ(serial.per_trial[s][c].size(), 4u);
      double sum = 0.0;
      for (double v : serial.per_trial[s][c]) sum += v;
      EXPECT_DOUBLE_EQ(serial.means[s][c], sum / 4.0);
    }
  }

  config.threads = 3;
  const auto threaded = run_comparison(config);
  for (int s = 0; s < 3; ++s) {
    for (int c = 0; c < 2; ++c) {
      EXPECT_EQ(serial.per_trial[s][c], threaded.per_trial[s][c])
          << "strategy " << s << " condition " << c;
    }
  }
}

TEST(RunComparison, PlannedStrategiesBeatRandomOnAverage) {
  ExperimentConfig config;
  config.m = 25;
  config.trials = 3;
  config.seed = 5;
  const auto result = run_comparison(config);
  const double random_nominal = result.means[int(Strategy::kRandom)][0];
  const double ids_nominal = result.means[int(Strategy::kIds)][0];
  EXPECT_GT(ids_nominal, random_nominal);
}

TEST(ParametricSweep, ApertureValuesArriveInDegrees) {
  // one sensor, far from every wall, shift capped at one unit: the wedge
  // never touches a boundary, so the mean equals the closed-form footprint
  // area for the aperture given in degrees
  ExperimentConfig config;
  config.m = 1;
  config.trials = 2;
  config.seed = 9;
  config.margin = 400.0;
  config.r_inner = 0.0;
  config.r_outer = 100.0;
  config.params.rho_max = 1.0;

  const std::vector<double> values{90.0, 360.0};
  const auto rows = parametric_sweep(config, "theta_h", values);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].parameter, "theta_h");
  EXPECT_EQ(rows[0].value, 90.0);
  ASSERT_EQ(rows[0].per_trial.size(), 2u);
  EXPECT_NEAR(rows[0].mean, (kPi / 4.0) * 100.0 * 100.0, 1e-6);
  EXPECT_NEAR(rows[1].mean, kPi * 100.0 * 100.0, 1e-6);
}

TEST(ParametricSweep, SensorCountChangesDeploymentSize) {
  ExperimentConfig config;
  config.trials = 2;
  config.seed = 13;
  config.r_inner = 0.0;
  config.r_outer = 60.0;

  const std::vector<double> values{5.0, 40.0};
  const auto rows = parametric_sweep(config, "m", values);
  ASSERT_EQ(rows.size(), 2u);
  // forty small footprints cover more than five
  EXPECT_GT(rows[1].mean, rows[0].mean);
  for (const auto& row : rows) {
    EXPECT_EQ(row.per_trial.size(), 2u);
    double sum = 0.0;
    for (double v : row.per_trial) sum += v;
    EXPECT_DOUBLE_EQ(row.mean, sum / 2.0);
  }
}

TEST(ParametricSweep, RejectsUnknownParameterAndBadShapes) {
  ExperimentConfig config;
  config.m = 4;
  config.trials = 1;
  const std::vector<double> one{1.0};
  EXPECT_THROW(parametric_sweep(config, "wavelength", one), ConfigError);

  const std::vector<double> none;
  EXPECT_THROW(parametric_sweep(config, "m", none), ConfigError);

  // r_inner must stay below r_outer after the override
  const std::vector<double> too_big{config.r_outer + 5.0};
  EXPECT_THROW(parametric_sweep(config, "r_inner", too_big), ConfigError);

  const std::vector<double> bad_aperture{400.0};
  EXPECT_THROW(parametric_sweep(config, "theta_h", bad_aperture), ConfigError);
}

TEST(StrategyNames, StableSpellings) {
  EXPECT_STREQ(to_string(Strategy::kRandom), "random");
  EXPECT_STREQ(to_string(Strategy::kIds), "ids");
  EXPECT_STREQ(to_string(Strategy::kRobustified), "robustified");
  EXPECT_STREQ(to_string(Condition::kNominal), "nominal");
  EXPECT_STREQ(to_string(Condition::kPerturbed), "perturbed");
}

}  // namespace
}  // namespace rrfcov
