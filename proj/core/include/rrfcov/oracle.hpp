// Independent ground-truth estimators used to validate the exact geometry
// and the orientation argmax. These deliberately avoid the clipping engine:
// areas come from point-membership sampling, best directions from dense
// enumeration.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "rrfcov/orientation.hpp"
#include "rrfcov/rng.hpp"
#include "rrfcov/voronoi.hpp"

namespace rrfcov {

struct AreaEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  double box_area = 0.0;  // sampling window, needed to re-derive errors
};

// Acceptance bound for exact-vs-sampled agreement: three standard errors
// (taken at both the sampled and the exact hit probability, so zero-hit
// slivers are judged fairly) plus a 1% relative allowance for areas above
// one square unit.
double area_agreement_bound(double exact, const AreaEstimate& est);

inline bool area_estimate_agrees(double exact, const AreaEstimate& est) {
  return std::abs(exact - est.mean) <= area_agreement_bound(exact, est);
}

namespace detail {
inline constexpr int kMcChunks = 256;
}

// Hit-fraction area estimate over an axis-aligned box. Sampling is split
// into fixed counter-based chunks whose hit counts are summed in index
// order, so the result is independent of the thread count.
template <class Membership>
AreaEstimate monte_carlo_area(Membership&& covered, const Roi& box,
                              std::int64_t samples, std::uint64_t seed,
                              int threads = 1) {
  AreaEstimate est;
  est.samples = samples;
  const double box_area = box.area();
  est.box_area = box_area;
  if (samples <= 0 || box_area <= 0.0) return est;

  const int chunks = detail::kMcChunks;
  std::vector<std::int64_t> hits(chunks, 0);
  const std::int64_t base = samples / chunks;
  const std::int64_t extra = samples % chunks;

  auto run_chunk = [&](int c) {
    RandomStream rng(seed, 0xA5E0ull + std::uint64_t(c));
    const std::int64_t n = base + (c < extra ? 1 : 0);
    std::int64_t h = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double x = box.min_corner.x + box.width() * rng.next_u01();
      const double y = box.min_corner.y + box.height() * rng.next_u01();
      if (covered(Point2{x, y})) ++h;
    }
    hits[c] = h;
  };

  if (threads <= 1) {
    for (int c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
        run_chunk(c);
      }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min(threads, chunks);
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::int64_t total_hits = 0;
  for (int c = 0; c < chunks; ++c) total_hits += hits[c];

  const double p = double(total_hits) / double(samples);
  est.mean = box_area * p;
  est.std_error = box_area * std::sqrt(p * (1.0 - p) / double(samples));
  return est;
}

// Monte Carlo estimate of footprint-inside-polygon area over the
// footprint's bounding box.
AreaEstimate monte_carlo_sector_polygon_area(const AnnularSector& s,
                                             const ConvexPolygon& poly,
                                             std::int64_t samples,
                                             std::uint64_t seed,
                                             int threads = 1);

struct BestVertexReport {
  std::optional<Candidate> best_vertex;       // empty if the cell yields none
  double best_dense_direction = 0.0;
  double best_dense_area = 0.0;
  double vertex_gap = 0.0;  // best dense area minus best vertex area
};

// Exhaustive check of the vertex argmax: re-evaluates every vertex
// candidate with the same tie rule and scans a dense direction grid
// (at least 360 angles) for anything better.
BestVertexReport brute_force_best_vertex(const Sensor& sensor,
                                         const VoronoiCell& cell, double shift,
                                         int angular_resolution = 360);

struct AreaFixture {
  AnnularSector sector;
  ConvexPolygon polygon;
  IntersectionCase configuration;
};

// Randomized sector/cell pairs spanning all intersection configurations:
// cells come from small clipped partitions, footprints vary in radii,
// aperture (full circles included), apex placement, and orientation.
std::vector<AreaFixture> random_area_fixtures(int count, std::uint64_t seed);

}  // namespace rrfcov
