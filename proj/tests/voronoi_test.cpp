#include "rrfcov/voronoi.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rrfcov/errors.hpp"
#include "rrfcov/rng.hpp"

namespace rrfcov {
namespace {

Roi unit_roi() { return Roi{{0.0, 0.0}, {1000.0, 1000.0}}; }

TEST(BuildClippedVoronoi, SingleSiteOwnsWholeRegion) {
  const std::vector<Point2> sites{{400.0, 300.0}};
  const auto diagram = build_clipped_voronoi(sites, unit_roi());

  ASSERT_EQ(diagram.cells.size(), 1u);
  const auto& cell = diagram.cells[0];
  EXPECT_EQ(cell.owner, 0);
  EXPECT_NEAR(cell.polygon.area(), 1000.0 * 1000.0, 1e-6);
  ASSERT_EQ(cell.neighbor_edges.size(), 4u);
  for (const auto& edge : cell.neighbor_edges) {
    EXPECT_EQ(edge.source.kind, EdgeSource::Kind::kWall);
  }
}

TEST(BuildClippedVoronoi, TwoSitesSplitAlongBisector) {
  const std::vector<Point2> sites{{250.0, 500.0}, {750.0, 500.0}};
  const auto diagram = build_clipped_voronoi(sites, unit_roi());

  ASSERT_EQ(diagram.cells.size(), 2u);
  EXPECT_NEAR(diagram.cells[0].polygon.area(), 500.0 * 1000.0, 1e-6);
  EXPECT_NEAR(diagram.cells[1].polygon.area(), 500.0 * 1000.0, 1e-6);

  // cell 0 is the left half: every vertex has x <= 500
  for (const auto& v : cell_vertices(diagram.cells[0])) {
    EXPECT_LE(v.x, 500.0 + 1e-9);
  }
  for (const auto& v : cell_vertices(diagram.cells[1])) {
    EXPECT_GE(v.x, 500.0 - 1e-9);
  }

  // exactly one bisector edge each, pointing at the other site
  const auto count_neighbors = [](const VoronoiCell& cell) {
    int n = 0;
    for (const auto& e : cell.neighbor_edges) {
      if (e.source.kind == EdgeSource::Kind::kNeighbor) ++n;
    }
    return n;
  };
  EXPECT_EQ(count_neighbors(diagram.cells[0]), 1);
  EXPECT_EQ(count_neighbors(diagram.cells[1]), 1);
  for (const auto& e : diagram.cells[0].neighbor_edges) {
    if (e.source.kind == EdgeSource::Kind::kNeighbor) {
      EXPECT_EQ(e.source.index, 1);
    }
  }
}

TEST(BuildClippedVoronoi, CellsTileTheRegion) {
  RandomStream rng(404, 0);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Point2> sites;
    const int m = 2 + int(rng.next_u01() * 30);
    for (int i = 0; i < m; ++i) {
      sites.push_back({rng.next_in(1.0, 999.0), rng.next_in(1.0, 999.0)});
    }
    const auto diagram = build_clipped_voronoi(sites, unit_roi());
    double total = 0.0;
    for (const auto& cell : diagram.cells) total += cell.polygon.area();
    EXPECT_NEAR(total, 1e6, 1e-4) << "rep " << rep << " m=" << m;
  }
}

TEST(BuildClippedVoronoi, CellContainsItsSite) {
  RandomStream rng(405, 0);
  std::vector<Point2> sites;
  for (int i = 0; i < 40; ++i) {
    sites.push_back({rng.next_in(5.0, 995.0), rng.next_in(5.0, 995.0)});
  }
  const auto diagram = build_clipped_voronoi(sites, unit_roi());
  for (const auto& cell : diagram.cells) {
    EXPECT_TRUE(cell.polygon.contains(cell.site, 1e-9)) << cell.owner;
    EXPECT_EQ(cell.site.x, sites[cell.owner].x);
  }
}

TEST(BuildClippedVoronoi, RandomPointsBelongToNearestSite) {
  RandomStream rng(406, 0);
  std::vector<Point2> sites;
  for (int i = 0; i < 25; ++i) {
    sites.push_back({rng.next_in(5.0, 995.0), rng.next_in(5.0, 995.0)});
  }
  const auto diagram = build_clipped_voronoi(sites, unit_roi());

  for (int probe = 0; probe < 2000; ++probe) {
    const Point2 p{rng.next_in(0.0, 1000.0), rng.next_in(0.0, 1000.0)};
    int nearest = 0;
    double best = distance(p, sites[0]);
    for (int i = 1; i < int(sites.size()); ++i) {
      const double d = distance(p, sites[i]);
      if (d < best) {
        best = d;
        nearest = i;
      }
    }
    // skip probes near a bisector where containment is ambiguous
    bool ambiguous = false;
    for (int i = 0; i < int(sites.size()); ++i) {
      if (i != nearest && distance(p, sites[i]) < best + 1e-6) {
        ambiguous = true;
      }
    }
    if (ambiguous) continue;
    EXPECT_TRUE(diagram.cells[nearest].polygon.contains(p, 1e-9))
        << "probe " << probe;
  }
}

TEST(BuildClippedVoronoi, ActiveHalfplanesAreUnitNormalAndTight) {
  RandomStream rng(407, 0);
  std::vector<Point2> sites;
  for (int i = 0; i < 12; ++i) {
    sites.push_back({rng.next_in(5.0, 995.0), rng.next_in(5.0, 995.0)});
  }
  const auto diagram = build_clipped_voronoi(sites, unit_roi());
  for (const auto& cell : diagram.cells) {
    for (const auto& edge : cell_halfplanes(cell)) {
      EXPECT_NEAR(norm(edge.plane.normal), 1.0, 1e-12);
      // the cell lies inside the half-plane, and some vertex achieves the bound
      double closest = 1e18;
      for (const auto& v : cell_vertices(cell)) {
        const double slack = halfplane_slack(edge.plane, v);
        EXPECT_GE(slack, -1e-9);
        closest = std::min(closest, slack);
      }
      EXPECT_LE(closest, 1e-6) << to_string(edge.source);
    }
  }
}

TEST(BuildClippedVoronoi, RejectsSitesOutsideRegion) {
  const std::vector<Point2> outside{{-5.0, 500.0}};
  EXPECT_THROW(build_clipped_voronoi(outside, unit_roi()), InfeasibleError);
  const std::vector<Point2> on_wall{{0.0, 500.0}};
  EXPECT_THROW(build_clipped_voronoi(on_wall, unit_roi()), InfeasibleError);
}

TEST(BuildClippedVoronoi, RejectsNearDuplicateSites) {
  const std::vector<Point2> dup{{100.0, 100.0}, {100.0, 100.0 + 1e-9}};
  EXPECT_THROW(build_clipped_voronoi(dup, unit_roi()), InfeasibleError);
}

TEST(BuildClippedVoronoi, RejectsEmptySiteList) {
  const std::vector<Point2> none;
  EXPECT_THROW(build_clipped_voronoi(none, unit_roi()), InfeasibleError);
}

TEST(SharedVertexPairs, FourQuadrantGridMeetsInCenter) {
  const std::vector<Point2> sites{
      {250.0, 250.0}, {750.0, 250.0}, {250.0, 750.0}, {750.0, 750.0}};
  const auto diagram = build_clipped_voronoi(sites, unit_roi());
  const auto pairs = shared_vertex_pairs(diagram);

  // all six pairs share at least the center vertex (500, 500)
  ASSERT_EQ(pairs.size(), 6u);
  EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
  EXPECT_EQ(pairs.front(), (std::pair<int, int>{0, 1}));
  EXPECT_EQ(pairs.back(), (std::pair<int, int>{2, 3}));
}

TEST(SharedVertexPairs, DisjointCellsAbsent) {
  // three collinear sites: outer cells never touch
  const std::vector<Point2> sites{
      {100.0, 500.0}, {500.0, 500.0}, {900.0, 500.0}};
  const auto diagram = build_clipped_voronoi(sites, unit_roi());
  const auto pairs = shared_vertex_pairs(diagram);
  EXPECT_EQ(pairs, (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}));
}

TEST(EdgeSourceToString, NamesWallsAndNeighbors) {
  EXPECT_EQ(to_string(EdgeSource::neighbor(7)), "sensor:7");
  EXPECT_EQ(to_string(EdgeSource::wall(EdgeSource::kLeft)), "wall:left");
  EXPECT_EQ(to_string(EdgeSource::wall(EdgeSource::kTop)), "wall:top");
}

}  // namespace
}  // namespace rrfcov
