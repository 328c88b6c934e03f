#include <benchmark/benchmark.h>

#include "rrfcov/harness.hpp"
#include "rrfcov/oracle.hpp"
#include "rrfcov/orientation.hpp"

namespace {

using namespace rrfcov;

const Roi kRoi{{0.0, 0.0}, {1000.0, 1000.0}};

void bm_sector_polygon_area(benchmark::State& state) {
  const auto fixtures = random_area_fixtures(64, 7);
  size_t i = 0;
  for (auto _ : state) {
    const AreaFixture& f = fixtures[i++ % fixtures.size()];
    benchmark::DoNotOptimize(
        sector_polygon_intersection_area(f.sector, f.polygon));
  }
}
BENCHMARK(bm_sector_polygon_area);

void bm_voronoi_build(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto sensors = random_deployment(m, kRoi, 11, 1.0, 25.0, 80.0, kPi / 3);
  std::vector<Point2> sites;
  for (const Sensor& s : sensors) sites.push_back(s.nominal);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_clipped_voronoi(sites, kRoi));
  }
}
BENCHMARK(bm_voronoi_build)->Arg(10)->Arg(50)->Arg(150);

void bm_monte_carlo_area(benchmark::State& state) {
  const auto fixtures = random_area_fixtures(1, 13);
  const AreaFixture& f = fixtures.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        monte_carlo_sector_polygon_area(f.sector, f.polygon, state.range(0), 3));
  }
}
BENCHMARK(bm_monte_carlo_area)->Arg(10000)->Arg(100000);

void bm_integrated_run(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto sensors = random_deployment(m, kRoi, 17, 1.0, 25.0, 80.0, kPi / 3);
  const AlgoParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_integrated_algorithm(sensors, kRoi, params));
  }
}
BENCHMARK(bm_integrated_run)->Arg(25)->Arg(150);

}  // namespace

BENCHMARK_MAIN();
