#include "rrfcov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rrfcov {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double distance(Point2 a, Point2 b) { return norm(a - b); }

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("normalize_angle: angle must always be finite");
  }
  double r = std::fmod(theta, kTwoPi);
  if (r <= -kPi) {
    r += kTwoPi;
  } else if (r > kPi) {
    r -= kTwoPi;
  }
  return r;
}

AnnularSector make_sector(Point2 apex, double r_inner, double r_outer,
                          double aperture, double orientation) {
  if (!std::isfinite(apex.x) || !std::isfinite(apex.y)) {
    throw std::invalid_argument("make_sector: apex must be finite");
  }
  if (!(r_inner >= 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer)) {
    throw std::invalid_argument("make_sector: need 0 <= r_inner < r_outer");
  }
  if (!(aperture > 0.0) || aperture > kTwoPi * (1.0 + 1e-12)) {
    throw std::invalid_argument("make_sector: aperture must lie in (0, 2*pi]");
  }
  AnnularSector s;
  s.apex = apex;
  s.r_inner = r_inner;
  s.r_outer = r_outer;
  s.half_angle = std::min(0.5 * aperture, kPi);
  s.orientation = normalize_angle(orientation);
  return s;
}

// ---------------------------------------------------------------------------
// polygon basics
// ---------------------------------------------------------------------------

namespace {

double shoelace_area(const std::vector<Point2>& v) {
  double twice = 0.0;
  const size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    twice += a.x * b.y - a.y * b.x;
  }
  return 0.5 * twice;
}

Halfplane edge_halfplane(Point2 a, Point2 b) {
  Vec2 e = b - a;
  double len = norm(e);
  if (len <= 0.0) {
    throw std::invalid_argument("edge_halfplane: zero-length edge");
  }
  // outward normal of a CCW polygon edge
  Vec2 n{e.y / len, -e.x / len};
  return {n, n.x * a.x + n.y * a.y};
}

}  // namespace

ConvexPolygon ConvexPolygon::from_ccw_vertices(std::vector<Point2> verts) {
  if (verts.size() < 3) {
    throw std::invalid_argument("ConvexPolygon: need at least 3 vertices");
  }
  for (const Point2& p : verts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("ConvexPolygon: vertices must be finite");
    }
  }
  if (shoelace_area(verts) <= 0.0) {
    throw std::invalid_argument("ConvexPolygon: vertices must wind CCW");
  }
  const size_t n = verts.size();
  double scale = 0.0;
  for (size_t i = 0; i < n; ++i) {
    scale = std::max(scale, std::abs(verts[i].x));
    scale = std::max(scale, std::abs(verts[i].y));
  }
  const double turn_tol = 16.0 * kGeomEps * std::max(1.0, scale);
  for (size_t i = 0; i < n; ++i) {
    Vec2 e0 = verts[(i + 1) % n] - verts[i];
    Vec2 e1 = verts[(i + 2) % n] - verts[(i + 1) % n];
    if (cross(e0, e1) < -turn_tol * std::max(1.0, norm(e0))) {
      throw std::invalid_argument("ConvexPolygon: vertices are not convex");
    }
  }
  ConvexPolygon poly;
  poly.vertices = std::move(verts);
  poly.halfplanes.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    poly.halfplanes.push_back(
        edge_halfplane(poly.vertices[i], poly.vertices[(i + 1) % n]));
  }
  return poly;
}

double ConvexPolygon::area() const { return shoelace_area(vertices); }

bool ConvexPolygon::contains(Point2 p, double eps) const {
  for (const Halfplane& h : halfplanes) {
    if (halfplane_slack(h, p) < -eps) return false;
  }
  return true;
}

void ConvexPolygon::bounding_box(Point2& lo, Point2& hi) const {
  lo = hi = vertices.front();
  for (const Point2& p : vertices) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
}

std::vector<Point2> clip_polygon_halfplane(const std::vector<Point2>& verts,
                                           const Halfplane& h, double eps) {
  std::vector<Point2> out;
  const size_t n = verts.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = verts[i];
    const Point2& b = verts[(i + 1) % n];
    const double da = -halfplane_slack(h, a);  // > 0 means outside
    const double db = -halfplane_slack(h, b);
    const bool ina = da <= eps;
    const bool inb = db <= eps;
    if (ina) out.push_back(a);
    if (ina != inb) {
      const double t = da / (da - db);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  // drop collapsed vertices so downstream code never sees zero-length edges
  std::vector<Point2> dedup;
  dedup.reserve(out.size());
  for (const Point2& p : out) {
    if (dedup.empty() || distance(dedup.back(), p) > eps) dedup.push_back(p);
  }
  while (dedup.size() > 1 && distance(dedup.front(), dedup.back()) <= eps) {
    dedup.pop_back();
  }
  if (dedup.size() < 3) dedup.clear();
  return dedup;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 &&
           cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t &&
           cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// ---------------------------------------------------------------------------
// footprint predicates and closed forms
// ---------------------------------------------------------------------------

bool covers_point(const AnnularSector& s, Point2 p) {
  const Vec2 d = p - s.apex;
  const double dist = norm(d);
  if (dist <= kGeomEps) return s.r_inner <= kGeomEps;
  if (dist < s.r_inner - kGeomEps || dist > s.r_outer + kGeomEps) return false;
  if (s.full_circle()) return true;
  // bearing test as a projection so the tolerance stays in ground units
  const Vec2 u = unit_vector(s.orientation);
  return dot(d, u) + kGeomEps >= dist * std::cos(s.half_angle);
}

double annular_sector_area(const AnnularSector& s) {
  return s.half_angle * (s.r_outer * s.r_outer - s.r_inner * s.r_inner);
}

double annular_sector_area_span_squared(const AnnularSector& s) {
  const double span = s.r_outer - s.r_inner;
  return s.half_angle * span * span;
}

double triangle_area_heron(double e1, double e2, double e3) {
  if (!(e1 >= 0.0) || !(e2 >= 0.0) || !(e3 >= 0.0)) {
    throw std::invalid_argument("triangle_area_heron: negative edge length");
  }
  const double longest = std::max({e1, e2, e3});
  const double perimeter = e1 + e2 + e3;
  if (2.0 * longest > perimeter + kGeomEps) {
    throw std::invalid_argument(
        "triangle_area_heron: edges violate the triangle inequality");
  }
  const double sp = 0.5 * perimeter;
  const double radicand = sp * (sp - e1) * (sp - e2) * (sp - e3);
  return std::sqrt(std::max(radicand, 0.0));
}

double circular_segment_area(double radius, double angle) {
  if (!(radius >= 0.0) || !(angle >= -kGeomEps) ||
      angle > kTwoPi * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "circular_segment_area: need radius >= 0 and angle in [0, 2*pi]");
  }
  return 0.5 * radius * radius * (angle - std::sin(angle));
}

std::vector<Point2> segment_circle_intersections(Point2 a, Point2 b,
                                                 Point2 center, double radius) {
  std::vector<Point2> pts;
  const Vec2 d = b - a;
  const double len_sq = norm_sq(d);
  if (len_sq <= 0.0 || radius <= 0.0) return pts;
  const double len = std::sqrt(len_sq);
  const double t_eps = kGeomEps / len;

  // closest approach of the carrier line to the center
  const double t_star = dot(center - a, d) / len_sq;
  const Point2 q = a + t_star * d;
  const double gap = distance(q, center) - radius;
  if (gap > kGeomEps) return pts;

  if (gap >= -kGeomEps) {  // tangency
    if (t_star >= -t_eps && t_star <= 1.0 + t_eps) pts.push_back(q);
    return pts;
  }

  const double closest_sq = norm_sq(q - center);
  const double half = std::sqrt(std::max(radius * radius - closest_sq, 0.0)) / len;
  for (double t : {t_star - half, t_star + half}) {
    if (t >= -t_eps && t <= 1.0 + t_eps) {
      const double tc = std::clamp(t, 0.0, 1.0);
      pts.push_back(a + tc * d);
    }
  }
  return pts;
}

std::optional<Point2> segment_sideline_intersection(Point2 a, Point2 b,
                                                    const AnnularSector& s,
                                                    SectorSide side) {
  if (s.full_circle()) return std::nullopt;  // sidelines degenerate away
  const double phi = s.orientation +
                     (side == SectorSide::kPlus ? s.half_angle : -s.half_angle);
  const Vec2 u = unit_vector(phi);
  const Vec2 d = b - a;
  const double len = norm(d);
  if (len <= 0.0) return std::nullopt;
  const double denom = cross(d, u);

  if (std::abs(denom) <= kGeomEps * std::max(1.0, len)) {
    if (std::abs(cross(u, a - s.apex)) > kGeomEps ||
        std::abs(cross(u, b - s.apex)) > kGeomEps) {
      return std::nullopt;  // parallel but offset
    }
    // collinear: the overlap point nearest the apex
    const double ta = dot(a - s.apex, u);
    const double tb = dot(b - s.apex, u);
    const double lo = std::max(std::min(ta, tb), s.r_inner);
    const double hi = std::min(std::max(ta, tb), s.r_outer);
    if (lo > hi + kGeomEps) return std::nullopt;
    return s.apex + lo * u;
  }

  const Vec2 w = s.apex - a;
  const double t = cross(w, u) / denom;
  const double tau = cross(w, d) / denom;
  const double t_eps = kGeomEps / len;
  if (t < -t_eps || t > 1.0 + t_eps) return std::nullopt;
  if (tau < s.r_inner - kGeomEps || tau > s.r_outer + kGeomEps) {
    return std::nullopt;
  }
  return s.apex + std::clamp(tau, s.r_inner, s.r_outer) * u;
}

// ---------------------------------------------------------------------------
// exact intersection area
// ---------------------------------------------------------------------------

namespace {

double wrap_pm_pi(double a) {
  if (a > kPi) return a - kTwoPi;
  if (a <= -kPi) return a + kTwoPi;
  return a;
}

// Green's-theorem contribution of one directed polygon edge, coordinates
// relative to the circle center. Spans inside the disc contribute chord
// (shoelace) terms, spans outside contribute the circular sector swept
// between their radial projections.
double disc_edge_contribution(Vec2 A, Vec2 B, double rho) {
  const Vec2 d = B - A;
  const double len_sq = norm_sq(d);
  if (len_sq <= 0.0) return 0.0;

  double breaks[4] = {0.0, 1.0, 1.0, 1.0};
  int nb = 2;
  const double rho_sq = rho * rho;
  const double t_star = -dot(A, d) / len_sq;
  const Vec2 q = A + t_star * d;
  const double closest_sq = norm_sq(q);
  if (closest_sq < rho_sq) {
    const double half = std::sqrt(rho_sq - closest_sq) / std::sqrt(len_sq);
    const double t1 = t_star - half;
    const double t2 = t_star + half;
    if (t1 > 0.0 && t1 < 1.0) breaks[nb - 1] = t1, breaks[nb++] = 1.0;
    if (t2 > 0.0 && t2 < 1.0) breaks[nb - 1] = t2, breaks[nb++] = 1.0;
  }

  double total = 0.0;
  for (int i = 0; i + 1 < nb; ++i) {
    const double ta = breaks[i];
    const double tb = breaks[i + 1];
    if (tb - ta <= 0.0) continue;
    const Vec2 P1 = A + ta * d;
    const Vec2 P2 = A + tb * d;
    const Vec2 M = A + (0.5 * (ta + tb)) * d;
    if (norm_sq(M) <= rho_sq) {
      total += 0.5 * cross(P1, P2);
    } else {
      const double dphi =
          wrap_pm_pi(std::atan2(P2.y, P2.x) - std::atan2(P1.y, P1.x));
      total += 0.5 * rho_sq * dphi;
    }
  }
  return total;
}

double disc_polygon_area_impl(const std::vector<Point2>& verts, Point2 c,
                              double rho) {
  if (rho <= 0.0 || verts.size() < 3) return 0.0;
  double total = 0.0;
  const size_t n = verts.size();
  for (size_t i = 0; i < n; ++i) {
    total += disc_edge_contribution(verts[i] - c, verts[(i + 1) % n] - c, rho);
  }
  return std::max(total, 0.0);
}

}  // namespace

double disc_polygon_intersection_area(const std::vector<Point2>& ccw_vertices,
                                      Point2 center, double radius) {
  return disc_polygon_area_impl(ccw_vertices, center, radius);
}

double sector_polygon_intersection_area(const AnnularSector& s,
                                        const ConvexPolygon& cell) {
  const std::vector<Point2>& verts = cell.vertices;
  if (verts.size() < 3) return 0.0;

  if (s.full_circle()) {
    const double outer = disc_polygon_area_impl(verts, s.apex, s.r_outer);
    const double inner = disc_polygon_area_impl(verts, s.apex, s.r_inner);
    return std::max(outer - inner, 0.0);
  }

  // Angular slices of aperture <= pi are exact intersections of two
  // half-planes through the apex, so each slice reduces to polygon clips
  // plus two disc areas.
  const double aperture = s.aperture();
  const int slices = aperture > kPi ? 2 : 1;
  const double width = aperture / slices;
  const double phi0 = s.orientation - s.half_angle;

  double total = 0.0;
  for (int i = 0; i < slices; ++i) {
    const double lo = phi0 + i * width;
    const double hi = lo + width;
    const Vec2 ul = unit_vector(lo);
    const Vec2 uh = unit_vector(hi);
    // interior of the slice: cross(ul, p-apex) >= 0 and cross(uh, p-apex) <= 0
    const Halfplane lower{{ul.y, -ul.x}, ul.y * s.apex.x - ul.x * s.apex.y};
    const Halfplane upper{{-uh.y, uh.x}, -uh.y * s.apex.x + uh.x * s.apex.y};
    std::vector<Point2> wedge = clip_polygon_halfplane(verts, lower);
    wedge = clip_polygon_halfplane(wedge, upper);
    if (wedge.size() < 3) continue;
    total += disc_polygon_area_impl(wedge, s.apex, s.r_outer);
    if (s.r_inner > 0.0) {
      total -= disc_polygon_area_impl(wedge, s.apex, s.r_inner);
    }
  }
  return std::max(total, 0.0);
}

// ---------------------------------------------------------------------------
// overlap-case diagnostics
// ---------------------------------------------------------------------------

namespace {

bool angle_within_window(const AnnularSector& s, Point2 p, double radius) {
  const Vec2 d = p - s.apex;
  const double dist = norm(d);
  if (dist <= kGeomEps) return true;
  const double ang_eps = kGeomEps / std::max(radius, 1.0);
  const double gap =
      std::abs(wrap_pm_pi(angle_of(d) - normalize_angle(s.orientation)));
  return gap <= s.half_angle + ang_eps;
}

}  // namespace

IntersectionCase classify_intersection_case(const AnnularSector& s,
                                            const ConvexPolygon& cell) {
  bool hit_inner = false;
  bool hit_outer = false;
  bool hit_side = false;
  std::vector<double> side_radii;

  const size_t n = cell.vertices.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2 a = cell.vertices[i];
    const Point2 b = cell.vertices[(i + 1) % n];
    for (const Point2& p :
         segment_circle_intersections(a, b, s.apex, s.r_outer)) {
      if (angle_within_window(s, p, s.r_outer)) hit_outer = true;
    }
    if (s.r_inner > 0.0) {
      for (const Point2& p :
           segment_circle_intersections(a, b, s.apex, s.r_inner)) {
        if (angle_within_window(s, p, s.r_inner)) hit_inner = true;
      }
    }
    if (!s.full_circle()) {
      for (SectorSide side : {SectorSide::kPlus, SectorSide::kMinus}) {
        if (auto p = segment_sideline_intersection(a, b, s, side)) {
          hit_side = true;
          side_radii.push_back(distance(*p, s.apex));
        }
      }
    }
  }

  if (hit_inner && hit_outer) return IntersectionCase::kBothArcs;
  if (hit_outer) return IntersectionCase::kOuterArcAndSideline;
  if (hit_inner) return IntersectionCase::kInnerArcAndSideline;

  if (hit_side) {
    // Sidelines only: the cut runs between the two arcs. Which arc stays
    // with the cell tells a near-side cut from a far-side one.
    const Vec2 bearing = unit_vector(s.orientation);
    const bool keeps_near = cell.contains(s.apex + s.r_inner * bearing);
    const bool keeps_far = cell.contains(s.apex + s.r_outer * bearing);
    if (keeps_near && !keeps_far) return IntersectionCase::kSidelinesNearSide;
    if (keeps_far && !keeps_near) return IntersectionCase::kSidelinesFarSide;
    double mean_radius = 0.0;
    for (double r : side_radii) mean_radius += r;
    mean_radius /= double(side_radii.size());
    return mean_radius <= 0.5 * (s.r_inner + s.r_outer)
               ? IntersectionCase::kSidelinesNearSide
               : IntersectionCase::kSidelinesFarSide;
  }

  // No contact with any footprint boundary element: either one region
  // contains the other or they are disjoint. A cell vertex strictly inside
  // the footprint means the cell is swallowed (unnamed; lumped with 7).
  for (const Point2& v : cell.vertices) {
    if (covers_point(s, v)) return IntersectionCase::kNoBoundaryContact;
  }
  const Point2 probe =
      s.apex + (0.5 * (s.r_inner + s.r_outer)) * unit_vector(s.orientation);
  if (cell.contains(probe)) return IntersectionCase::kFootprintInsideCell;
  return IntersectionCase::kNoBoundaryContact;
}

void sector_bounding_box(const AnnularSector& s, Point2& lo, Point2& hi) {
  std::vector<Point2> extremes;
  const double b = normalize_angle(s.orientation);
  for (double radius : {s.r_inner, s.r_outer}) {
    extremes.push_back(s.apex + radius * unit_vector(b - s.half_angle));
    extremes.push_back(s.apex + radius * unit_vector(b + s.half_angle));
  }
  // axis-aligned extremes of the outer arc that fall inside the window
  for (double axis : {0.0, 0.5 * kPi, kPi, -0.5 * kPi}) {
    if (std::abs(wrap_pm_pi(axis - b)) <= s.half_angle + 1e-15) {
      extremes.push_back(s.apex + s.r_outer * unit_vector(axis));
    }
  }
  lo = hi = extremes.front();
  for (const Point2& p : extremes) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
}

}  // namespace rrfcov
