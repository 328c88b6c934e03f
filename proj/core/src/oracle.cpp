#include "rrfcov/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rrfcov {

double area_agreement_bound(double exact, const AreaEstimate& est) {
  double se = est.std_error;
  if (est.box_area > 0.0 && est.samples > 0) {
    const double p = std::clamp(exact / est.box_area, 0.0, 1.0);
    se = std::max(se, est.box_area *
                          std::sqrt(p * (1.0 - p) / double(est.samples)));
  }
  double bound = 3.0 * se;
  if (exact > 1.0) bound = std::max(bound, 0.01 * exact);
  return bound;
}

AreaEstimate monte_carlo_sector_polygon_area(const AnnularSector& s,
                                             const ConvexPolygon& poly,
                                             std::int64_t samples,
                                             std::uint64_t seed, int threads) {
  Point2 lo, hi;
  sector_bounding_box(s, lo, hi);
  const Roi box{lo, hi};
  return monte_carlo_area(
      [&](Point2 p) { return covers_point(s, p) && poly.contains(p); }, box,
      samples, seed, threads);
}

BestVertexReport brute_force_best_vertex(const Sensor& sensor,
                                         const VoronoiCell& cell, double shift,
                                         int angular_resolution) {
  if (angular_resolution < 360) {
    throw std::invalid_argument(
        "brute_force_best_vertex: need at least 360 directions");
  }

  BestVertexReport report;
  for (const CandidateDirection& cd : candidate_directions(sensor, cell)) {
    Candidate c = evaluate_candidate(sensor, cell, cd, shift);
    if (!report.best_vertex || candidate_precedes(c, *report.best_vertex)) {
      report.best_vertex = std::move(c);
    }
  }

  for (int g = 0; g < angular_resolution; ++g) {
    // covers (-pi, pi] as g sweeps the grid
    const double direction =
        normalize_angle(-kPi + (g + 1) * (kTwoPi / angular_resolution));
    const CandidateDirection cd{sensor.nominal + sensor.r_outer * unit_vector(direction),
                                direction, -1};
    const Candidate c = evaluate_candidate(sensor, cell, cd, shift);
    if (g == 0 || c.area > report.best_dense_area) {
      report.best_dense_area = c.area;
      report.best_dense_direction = direction;
    }
  }

  const double vertex_area = report.best_vertex ? report.best_vertex->area : 0.0;
  report.vertex_gap = report.best_dense_area - vertex_area;
  return report;
}

std::vector<AreaFixture> random_area_fixtures(int count, std::uint64_t seed) {
  const Roi roi{{0.0, 0.0}, {1000.0, 1000.0}};
  std::vector<AreaFixture> fixtures;
  fixtures.reserve(count);

  RandomStream rng(seed, 0xF1A7ull);
  int produced = 0;
  while (produced < count) {
    const int m = 1 + int(rng.next_u01() * 12.0);
    std::vector<Point2> sites;
    sites.reserve(m);
    for (int i = 0; i < m; ++i) {
      sites.push_back({5.0 + 990.0 * rng.next_u01(),
                       5.0 + 990.0 * rng.next_u01()});
    }
    VoronoiDiagram diagram;
    try {
      diagram = build_clipped_voronoi(sites, roi);
    } catch (const std::exception&) {
      continue;  // coincident sites; redraw
    }
    const int pick = int(rng.next_u01() * m) % m;
    const VoronoiCell& cell = diagram.cells[pick];

    const double r_outer = 20.0 + 280.0 * rng.next_u01();
    const double inner_draw = rng.next_u01();
    const double r_inner =
        inner_draw < 0.3 ? 0.0 : (0.05 + 0.75 * rng.next_u01()) * r_outer;
    const double aperture_draw = rng.next_u01();
    double theta_h;
    if (aperture_draw < 0.1) {
      theta_h = kTwoPi;
    } else if (aperture_draw < 0.55) {
      theta_h = (0.05 + 0.95 * rng.next_u01()) * kPi;  // narrow wedge
    } else {
      theta_h = (1.0 + 0.999 * rng.next_u01()) * kPi;  // reflex aperture
    }

    Point2 apex = cell.site;
    const double apex_draw = rng.next_u01();
    if (apex_draw < 0.25) {
      apex = apex + (r_outer * rng.next_u01()) * unit_vector(rng.next_angle());
    } else if (apex_draw < 0.35) {
      apex = {roi.min_corner.x + roi.width() * rng.next_u01(),
              roi.min_corner.y + roi.height() * rng.next_u01()};
    }
    const double orientation = rng.next_angle();

    AreaFixture fixture{make_sector(apex, r_inner, r_outer, theta_h, orientation),
                        cell.polygon, IntersectionCase::kNoBoundaryContact};
    fixture.configuration =
        classify_intersection_case(fixture.sector, fixture.polygon);
    fixtures.push_back(std::move(fixture));
    ++produced;
  }
  return fixtures;
}

}  // namespace rrfcov
