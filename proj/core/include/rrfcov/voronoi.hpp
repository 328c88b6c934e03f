// Voronoi partition of a rectangular region of interest, built cell by cell
// through half-plane clipping. Each cell keeps the exact bounding half-planes
// (perpendicular bisectors and region walls) labeled with their origin.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rrfcov/geometry.hpp"

namespace rrfcov {

struct Roi {
  Point2 min_corner{0.0, 0.0};
  Point2 max_corner{1.0, 1.0};

  double width() const { return max_corner.x - min_corner.x; }
  double height() const { return max_corner.y - min_corner.y; }
  double area() const { return width() * height(); }
  bool contains(Point2 p, double eps = 0.0) const {
    return p.x >= min_corner.x - eps && p.x <= max_corner.x + eps &&
           p.y >= min_corner.y - eps && p.y <= max_corner.y + eps;
  }
  bool strictly_inside(Point2 p, double margin = 0.0) const {
    return p.x > min_corner.x + margin && p.x < max_corner.x - margin &&
           p.y > min_corner.y + margin && p.y < max_corner.y - margin;
  }
};

// Provenance of one cell edge: either the bisector toward another site or
// one of the four region walls.
struct EdgeSource {
  enum class Kind : std::uint8_t { kNeighbor, kWall };
  enum Wall : int { kLeft = 0, kBottom = 1, kRight = 2, kTop = 3 };

  Kind kind = Kind::kWall;
  int index = 0;  // neighbor site id, or a Wall value

  static EdgeSource neighbor(int site) {
    return {Kind::kNeighbor, site};
  }
  static EdgeSource wall(int w) { return {Kind::kWall, w}; }

  bool operator==(const EdgeSource&) const = default;
};

std::string to_string(const EdgeSource& src);

struct LabeledHalfplane {
  Halfplane plane;  // interior of the cell satisfies plane.normal . p <= offset
  EdgeSource source;
};

struct VoronoiCell {
  int owner = -1;
  Point2 site;
  ConvexPolygon polygon;
  std::vector<LabeledHalfplane> neighbor_edges;  // active constraints only
};

struct VoronoiDiagram {
  Roi roi;
  std::vector<VoronoiCell> cells;
};

// Clips the region rectangle against the perpendicular bisectors toward all
// other sites. Sites must be strictly inside the region and pairwise farther
// apart than 1e-6; violations raise InfeasibleError.
VoronoiDiagram build_clipped_voronoi(std::span<const Point2> sites,
                                     const Roi& roi);

// The active bounding constraints of a cell: bisectors toward each Voronoi
// neighbor plus the region walls the cell touches. Normals have unit length.
const std::vector<LabeledHalfplane>& cell_halfplanes(const VoronoiCell& cell);

// CCW vertices of the clipped cell.
const std::vector<Point2>& cell_vertices(const VoronoiCell& cell);

// Unordered pairs of cells whose polygons share at least one vertex within
// tolerance, sorted lexicographically.
std::vector<std::pair<int, int>> shared_vertex_pairs(
    const VoronoiDiagram& diagram, double tol = 1e-9);

}  // namespace rrfcov
