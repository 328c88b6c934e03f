#pragma once

#include <span>
#include <string>

#include "rrfcov/orientation.hpp"
#include "rrfcov/voronoi.hpp"

namespace rrfcov {

struct RenderOptions {
  double pixels_per_unit = 0.8;
  double margin_px = 24.0;
  bool draw_sites = true;
  bool draw_effective_locations = true;
};

// Self-contained SVG document: partition cells, sensor sites, the shifted
// apex of each oriented sensor, and the annular-sector footprints.  Sleeping
// sensors are drawn dimmed with no footprint.
std::string render_solution_svg(std::span<const Sensor> sensors,
                                const VoronoiDiagram& diagram,
                                const OrientationSolution& solution,
                                const RenderOptions& options = {});

}  // namespace rrfcov
