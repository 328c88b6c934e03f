// Radius of robust feasibility: the largest disc of location uncertainty a
// sensor can absorb while every displaced position stays inside its own
// Voronoi cell. For unit-normalized bounding half-planes this is the minimum
// constraint slack at the nominal location.
#pragma once

#include <span>
#include <vector>

#include "rrfcov/voronoi.hpp"

namespace rrfcov {

struct LabeledSlack {
  EdgeSource source;
  double slack = 0.0;
};

struct RrfReport {
  int sensor = -1;
  double rrf = 0.0;
  EdgeSource binding_constraint;
  std::vector<LabeledSlack> slacks;
};

// Displaced location shift * unit(target - nominal) away from nominal.
// target == nominal leaves the location unchanged.
Point2 worst_case_location(Point2 nominal, Point2 target, double shift);

// Minimum slack over the cell's active constraints. Throws
// InfeasibleError if the nominal location violates a constraint by more
// than kGeomEps or if no constraints are given.
RrfReport sensor_rrf(int sensor_id, Point2 nominal,
                     std::span<const LabeledHalfplane> planes);

inline RrfReport sensor_rrf(const VoronoiCell& cell) {
  return sensor_rrf(cell.owner, cell.site, cell.neighbor_edges);
}

// Grid check, independent of the slack computation: true iff all n_dirs
// equally spaced points on the radius-alpha circle around nominal satisfy
// every half-plane.
bool rrf_oracle(Point2 nominal, std::span<const LabeledHalfplane> planes,
                double alpha, int n_dirs);

// Largest feasible alpha per rrf_oracle, bracketed by bisection to `tol`.
// Overestimates the true radius by at most rrf * (sec(pi/n_dirs) - 1), so
// callers pick n_dirs from the tolerance they need.
double rrf_by_bisection(Point2 nominal, std::span<const LabeledHalfplane> planes,
                        double hi, double tol, int n_dirs);

// Smallest rrf across reports; errors on an empty list.
double min_network_rrf(std::span<const RrfReport> reports);

}  // namespace rrfcov
