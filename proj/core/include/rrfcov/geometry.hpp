// Planar primitives for directional-sensor coverage: annular sectors,
// convex polygons, and the exact area of their intersection.
#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace rrfcov {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Absolute tolerance in ground units. Boundaries are inclusive: anything
// within kGeomEps of a boundary counts as on it.
inline constexpr double kGeomEps = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }
inline Vec2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(Point2 p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }
inline Point2 operator-(Point2 p, Vec2 v) { return {p.x - v.x, p.y - v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Vec2 v) { return dot(v, v); }
double norm(Vec2 v);
double distance(Point2 a, Point2 b);

inline Vec2 unit_vector(double angle);
inline double angle_of(Vec2 v);

// Maps any finite angle into (-pi, pi]. Throws std::invalid_argument on
// non-finite input.
double normalize_angle(double theta);

// Ground footprint of a directional sensor: the set of points at radial
// distance [r_inner, r_outer] from the apex whose bearing lies within
// half_angle of the orientation. half_angle == pi means a full annulus
// (or a full disc when r_inner == 0).
struct AnnularSector {
  Point2 apex;
  double r_inner = 0.0;
  double r_outer = 1.0;
  double half_angle = kPi;    // aperture/2, in (0, pi]
  double orientation = 0.0;   // boresight bearing, in (-pi, pi]

  double aperture() const { return 2.0 * half_angle; }
  bool full_circle() const { return half_angle >= kPi * (1.0 - 1e-12); }
};

// Validating factory; aperture is the full opening angle in (0, 2*pi].
AnnularSector make_sector(Point2 apex, double r_inner, double r_outer,
                          double aperture, double orientation);

// Half-plane in the form normal . p <= offset with |normal| == 1.
struct Halfplane {
  Vec2 normal;
  double offset = 0.0;
};

inline double halfplane_slack(const Halfplane& h, Point2 p) {
  return h.offset - (h.normal.x * p.x + h.normal.y * p.y);
}

struct ConvexPolygon {
  std::vector<Point2> vertices;     // counter-clockwise
  std::vector<Halfplane> halfplanes;  // edge k runs vertices[k] -> vertices[k+1]

  static ConvexPolygon from_ccw_vertices(std::vector<Point2> verts);

  double area() const;
  bool contains(Point2 p, double eps = kGeomEps) const;
  void bounding_box(Point2& lo, Point2& hi) const;
};

// Which parts of the footprint boundary the polygon's edges touch.
// Labels follow the standard seven-way partition of cell/footprint overlap
// configurations; the area engine does not branch on this, it exists for
// diagnostics and test partitioning.
enum class IntersectionCase : int {
  kFootprintInsideCell = 1,
  kOuterArcAndSideline = 2,
  kInnerArcAndSideline = 3,
  kSidelinesNearSide = 4,   // sideline contact approached from within the range
  kSidelinesFarSide = 5,    // sideline contact reaching past the outer radius
  kBothArcs = 6,
  kNoBoundaryContact = 7,
};

bool covers_point(const AnnularSector& s, Point2 p);

// Closed-form footprint area: half_angle * (r_outer^2 - r_inner^2).
double annular_sector_area(const AnnularSector& s);

// Deliberately different closed form built on the squared radial span,
// half_angle * (r_outer - r_inner)^2. Wrong for r_inner > 0; kept so the
// validation suite can demonstrate that the oracle rejects it.
double annular_sector_area_span_squared(const AnnularSector& s);

// Area from edge lengths. Throws std::invalid_argument if the triangle
// inequality is violated beyond kGeomEps; near-degenerate inputs clamp to 0.
double triangle_area_heron(double e1, double e2, double e3);

// Both intersection points of segment [a,b] with the circle |p - center| ==
// radius, tangency collapsing to a single point. Points are returned in
// increasing segment-parameter order.
std::vector<Point2> segment_circle_intersections(Point2 a, Point2 b,
                                                 Point2 center, double radius);

enum class SectorSide { kPlus, kMinus };  // orientation + / - half_angle

// Intersection of segment [a,b] with one radial sideline of the sector,
// restricted to radial range [r_inner, r_outer]. A collinear overlap
// resolves to the overlap point nearest the apex.
std::optional<Point2> segment_sideline_intersection(Point2 a, Point2 b,
                                                    const AnnularSector& s,
                                                    SectorSide side);

IntersectionCase classify_intersection_case(const AnnularSector& s,
                                            const ConvexPolygon& cell);

// Area cut off a circular sector by its chord: radius^2/2 * (angle - sin
// angle), angle in [0, 2*pi].
double circular_segment_area(double radius, double angle);

// Exact area of disc(center, radius) ∩ polygon via Green's theorem:
// chord spans contribute shoelace terms, boundary stretches outside the
// circle contribute swept circular sectors.
double disc_polygon_intersection_area(const std::vector<Point2>& ccw_vertices,
                                      Point2 center, double radius);

// Exact area of footprint ∩ polygon. Single engine for every overlap
// configuration: the footprint is split into at most two angular slices of
// aperture <= pi, each slice's wedge is applied as two half-plane clips, and
// the residual disc intersections are differenced (outer minus inner).
double sector_polygon_intersection_area(const AnnularSector& s,
                                        const ConvexPolygon& cell);

// Sutherland-Hodgman step: polygon ∩ half-plane, orientation preserved.
std::vector<Point2> clip_polygon_halfplane(const std::vector<Point2>& verts,
                                           const Halfplane& h,
                                           double eps = kGeomEps);

// Tight axis-aligned bounding box of the footprint.
void sector_bounding_box(const AnnularSector& s, Point2& lo, Point2& hi);

// Andrew monotone chain; returns CCW hull without repeated first vertex.
std::vector<Point2> convex_hull(std::vector<Point2> points);

inline Vec2 unit_vector(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

}  // namespace rrfcov
