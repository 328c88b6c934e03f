#include "rrfcov/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rrfcov/errors.hpp"

namespace rrfcov {

std::string to_string(const EdgeSource& src) {
  if (src.kind == EdgeSource::Kind::kNeighbor) {
    return "sensor:" + std::to_string(src.index);
  }
  static const char* kWallNames[] = {"left", "bottom", "right", "top"};
  return std::string("wall:") + kWallNames[src.index & 3];
}

namespace {

constexpr double kMinSiteSeparation = 1e-6;

struct LabeledLoop {
  std::vector<Point2> verts;
  std::vector<EdgeSource> sources;  // edge k: verts[k] -> verts[k+1]
};

// Sutherland-Hodgman against one half-plane, carrying the outgoing-edge
// label of each vertex. The cut introduces a single edge labeled `src`.
void clip_labeled(LabeledLoop& loop, const Halfplane& h, EdgeSource src,
                  double eps) {
  const size_t n = loop.verts.size();
  if (n == 0) return;
  std::vector<Point2> verts;
  std::vector<EdgeSource> sources;
  verts.reserve(n + 1);
  sources.reserve(n + 1);
  for (size_t i = 0; i < n; ++i) {
    const Point2 a = loop.verts[i];
    const Point2 b = loop.verts[(i + 1) % n];
    const EdgeSource label = loop.sources[i];
    const double da = -halfplane_slack(h, a);
    const double db = -halfplane_slack(h, b);
    const bool ina = da <= eps;
    const bool inb = db <= eps;
    if (ina) {
      verts.push_back(a);
      sources.push_back(label);
    }
    if (ina != inb) {
      const double t = da / (da - db);
      verts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      // leaving: remaining boundary runs along the cut; entering: the
      // original edge resumes
      sources.push_back(ina ? src : label);
    }
  }

  // collapse zero-length edges, keeping the label of the edge that leaves
  // the surviving vertex
  LabeledLoop out;
  const size_t m = verts.size();
  for (size_t i = 0; i < m; ++i) {
    const size_t j = (i + 1) % m;
    if (distance(verts[i], verts[j]) <= eps) continue;
    out.verts.push_back(verts[i]);
    out.sources.push_back(sources[i]);
  }
  if (out.verts.size() < 3) {
    out.verts.clear();
    out.sources.clear();
  }
  loop = std::move(out);
}

}  // namespace

VoronoiDiagram build_clipped_voronoi(std::span<const Point2> sites,
                                     const Roi& roi) {
  if (sites.empty()) {
    throw InfeasibleError("voronoi: at least one site is required");
  }
  if (!(roi.max_corner.x > roi.min_corner.x) ||
      !(roi.max_corner.y > roi.min_corner.y)) {
    throw InfeasibleError("voronoi: region must have positive extent");
  }
  for (size_t i = 0; i < sites.size(); ++i) {
    if (!std::isfinite(sites[i].x) || !std::isfinite(sites[i].y) ||
        !roi.strictly_inside(sites[i])) {
      throw InfeasibleError("voronoi: site " + std::to_string(i) +
                            " is not strictly inside the region");
    }
    for (size_t j = i + 1; j < sites.size(); ++j) {
      if (distance(sites[i], sites[j]) <= kMinSiteSeparation) {
        throw InfeasibleError("voronoi: sites " + std::to_string(i) + " and " +
                              std::to_string(j) + " coincide");
      }
    }
  }

  const Point2 lo = roi.min_corner;
  const Point2 hi = roi.max_corner;
  const LabeledLoop roi_loop{
      {{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}},
      {EdgeSource::wall(EdgeSource::kBottom), EdgeSource::wall(EdgeSource::kRight),
       EdgeSource::wall(EdgeSource::kTop), EdgeSource::wall(EdgeSource::kLeft)}};
  const LabeledHalfplane wall_planes[4] = {
      {{{-1.0, 0.0}, -lo.x}, EdgeSource::wall(EdgeSource::kLeft)},
      {{{0.0, -1.0}, -lo.y}, EdgeSource::wall(EdgeSource::kBottom)},
      {{{1.0, 0.0}, hi.x}, EdgeSource::wall(EdgeSource::kRight)},
      {{{0.0, 1.0}, hi.y}, EdgeSource::wall(EdgeSource::kTop)}};

  VoronoiDiagram diagram;
  diagram.roi = roi;
  diagram.cells.reserve(sites.size());

  for (size_t i = 0; i < sites.size(); ++i) {
    LabeledLoop loop = roi_loop;
    std::vector<LabeledHalfplane> bisectors;
    bisectors.reserve(sites.size() - 1);
    for (size_t j = 0; j < sites.size(); ++j) {
      if (j == i) continue;
      Vec2 d = sites[j] - sites[i];
      const double len = norm(d);
      const Vec2 n{d.x / len, d.y / len};
      const Point2 mid{0.5 * (sites[i].x + sites[j].x),
                       0.5 * (sites[i].y + sites[j].y)};
      const Halfplane bisector{n, n.x * mid.x + n.y * mid.y};
      bisectors.push_back({bisector, EdgeSource::neighbor(int(j))});
      clip_labeled(loop, bisector, EdgeSource::neighbor(int(j)), kGeomEps);
    }
    if (loop.verts.size() < 3) {
      throw InfeasibleError("voronoi: cell of site " + std::to_string(i) +
                            " degenerated during clipping");
    }

    VoronoiCell cell;
    cell.owner = int(i);
    cell.site = sites[i];
    cell.polygon = ConvexPolygon::from_ccw_vertices(loop.verts);

    // keep only the constraints that actually bound the final polygon,
    // with their exact construction-time coefficients
    for (const EdgeSource& src : loop.sources) {
      const bool already =
          std::any_of(cell.neighbor_edges.begin(), cell.neighbor_edges.end(),
                      [&](const LabeledHalfplane& lh) { return lh.source == src; });
      if (already) continue;
      if (src.kind == EdgeSource::Kind::kWall) {
        cell.neighbor_edges.push_back(wall_planes[src.index]);
      } else {
        const auto it = std::find_if(
            bisectors.begin(), bisectors.end(),
            [&](const LabeledHalfplane& lh) { return lh.source == src; });
        cell.neighbor_edges.push_back(*it);
      }
    }
    diagram.cells.push_back(std::move(cell));
  }
  return diagram;
}

const std::vector<LabeledHalfplane>& cell_halfplanes(const VoronoiCell& cell) {
  return cell.neighbor_edges;
}

const std::vector<Point2>& cell_vertices(const VoronoiCell& cell) {
  return cell.polygon.vertices;
}

std::vector<std::pair<int, int>> shared_vertex_pairs(
    const VoronoiDiagram& diagram, double tol) {
  struct Tagged {
    Point2 p;
    int cell;
  };
  std::vector<Tagged> verts;
  for (const VoronoiCell& cell : diagram.cells) {
    for (const Point2& p : cell.polygon.vertices) {
      verts.push_back({p, cell.owner});
    }
  }
  std::sort(verts.begin(), verts.end(), [](const Tagged& a, const Tagged& b) {
    return a.p.x < b.p.x || (a.p.x == b.p.x && a.p.y < b.p.y);
  });

  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < verts.size(); ++i) {
    for (size_t j = i + 1; j < verts.size(); ++j) {
      if (verts[j].p.x - verts[i].p.x > tol) break;
      if (std::abs(verts[j].p.y - verts[i].p.y) > tol) continue;
      if (verts[i].cell == verts[j].cell) continue;
      pairs.emplace_back(std::min(verts[i].cell, verts[j].cell),
                         std::max(verts[i].cell, verts[j].cell));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace rrfcov
