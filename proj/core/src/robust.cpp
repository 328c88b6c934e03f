#include "rrfcov/robust.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rrfcov/errors.hpp"

namespace rrfcov {

Point2 worst_case_location(Point2 nominal, Point2 target, double shift) {
  const Vec2 d = target - nominal;
  const double len = norm(d);
  if (len <= kGeomEps || shift == 0.0) return nominal;
  return nominal + (shift / len) * d;
}

RrfReport sensor_rrf(int sensor_id, Point2 nominal,
                     std::span<const LabeledHalfplane> planes) {
  if (planes.empty()) {
    throw InfeasibleError("sensor_rrf: no bounding constraints");
  }
  RrfReport report;
  report.sensor = sensor_id;
  report.slacks.reserve(planes.size());
  double min_slack = std::numeric_limits<double>::infinity();
  for (const LabeledHalfplane& lh : planes) {
    const double slack = halfplane_slack(lh.plane, nominal);
    if (slack < -kGeomEps) {
      throw InfeasibleError("sensor_rrf: nominal location violates constraint " +
                            to_string(lh.source));
    }
    report.slacks.push_back({lh.source, slack});
    if (slack < min_slack) {
      min_slack = slack;
      report.binding_constraint = lh.source;
    }
  }
  report.rrf = std::max(min_slack, 0.0);
  return report;
}

bool rrf_oracle(Point2 nominal, std::span<const LabeledHalfplane> planes,
                double alpha, int n_dirs) {
  if (n_dirs < 8) {
    throw std::invalid_argument("rrf_oracle: need at least 8 directions");
  }
  if (alpha < 0.0) return false;
  const double step = kTwoPi / n_dirs;
  for (int k = 0; k < n_dirs; ++k) {
    const Point2 p = nominal + alpha * unit_vector(k * step);
    for (const LabeledHalfplane& lh : planes) {
      if (halfplane_slack(lh.plane, p) < -kGeomEps) return false;
    }
  }
  return true;
}

double rrf_by_bisection(Point2 nominal, std::span<const LabeledHalfplane> planes,
                        double hi, double tol, int n_dirs) {
  if (!(hi > 0.0) || !(tol > 0.0)) {
    throw std::invalid_argument("rrf_by_bisection: need hi > 0 and tol > 0");
  }
  double lo = 0.0;
  if (!rrf_oracle(nominal, planes, lo, n_dirs)) return 0.0;
  if (rrf_oracle(nominal, planes, hi, n_dirs)) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (rrf_oracle(nominal, planes, mid, n_dirs)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double min_network_rrf(std::span<const RrfReport> reports) {
  if (reports.empty()) {
    throw InfeasibleError("min_network_rrf: no reports");
  }
  double m = reports.front().rrf;
  for (const RrfReport& r : reports) m = std::min(m, r.rrf);
  return m;
}

}  // namespace rrfcov
