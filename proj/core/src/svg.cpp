#include "rrfcov/svg.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include "rrfcov/format.hpp"

namespace rrfcov {

namespace {

constexpr std::array<const char*, 8> kPalette = {
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759",
    "#b07aa1", "#76b7b2", "#edc948", "#9c755f"};

struct Canvas {
  double scale;
  double margin;
  Roi roi;

  double sx(double x) const { return margin + (x - roi.min_corner.x) * scale; }
  double sy(double y) const { return margin + (roi.max_corner.y - y) * scale; }
  std::string pt(Point2 p) const {
    return format_double(sx(p.x)) + " " + format_double(sy(p.y));
  }
};

std::string polygon_points(const Canvas& cv, const ConvexPolygon& poly) {
  std::string out;
  for (const Point2& v : poly.vertices) {
    if (!out.empty()) out += " ";
    out += format_double(cv.sx(v.x)) + "," + format_double(cv.sy(v.y));
  }
  return out;
}

std::string arc_to(const Canvas& cv, double radius_px, bool large,
                   bool world_ccw, Point2 end) {
  // After the y-flip a world-CCW arc stays visually CCW, which is the
  // negative-angle direction in SVG user space.
  const char sweep = world_ccw ? '0' : '1';
  std::string out = "A ";
  out += format_double(radius_px);
  out += " ";
  out += format_double(radius_px);
  out += " 0 ";
  out += large ? '1' : '0';
  out += ' ';
  out += sweep;
  out += ' ';
  out += cv.pt(end);
  return out;
}

std::string footprint_path(const Canvas& cv, const AnnularSector& s) {
  const double r_px = s.r_inner * cv.scale;
  const double R_px = s.r_outer * cv.scale;
  std::ostringstream d;

  if (s.full_circle()) {
    const Point2 east{s.apex.x + s.r_outer, s.apex.y};
    const Point2 west{s.apex.x - s.r_outer, s.apex.y};
    d << "M " << cv.pt(east) << " " << arc_to(cv, R_px, true, true, west)
      << " " << arc_to(cv, R_px, true, true, east) << " Z";
    if (s.r_inner > 0.0) {
      const Point2 ie{s.apex.x + s.r_inner, s.apex.y};
      const Point2 iw{s.apex.x - s.r_inner, s.apex.y};
      d << " M " << cv.pt(ie) << " " << arc_to(cv, r_px, true, true, iw)
        << " " << arc_to(cv, r_px, true, true, ie) << " Z";
    }
    return d.str();
  }

  const Vec2 lo = unit_vector(s.orientation - s.half_angle);
  const Vec2 hi = unit_vector(s.orientation + s.half_angle);
  const bool large = s.aperture() > kPi;
  const Point2 outer_lo = s.apex + s.r_outer * lo;
  const Point2 outer_hi = s.apex + s.r_outer * hi;

  if (s.r_inner > 0.0) {
    const Point2 inner_lo = s.apex + s.r_inner * lo;
    const Point2 inner_hi = s.apex + s.r_inner * hi;
    d << "M " << cv.pt(inner_lo) << " L " << cv.pt(outer_lo) << " "
      << arc_to(cv, R_px, large, true, outer_hi) << " L " << cv.pt(inner_hi)
      << " " << arc_to(cv, r_px, large, false, inner_lo) << " Z";
  } else {
    d << "M " << cv.pt(s.apex) << " L " << cv.pt(outer_lo) << " "
      << arc_to(cv, R_px, large, true, outer_hi) << " Z";
  }
  return d.str();
}

}  // namespace

std::string render_solution_svg(std::span<const Sensor> sensors,
                                const VoronoiDiagram& diagram,
                                const OrientationSolution& solution,
                                const RenderOptions& options) {
  if (sensors.size() != diagram.cells.size() ||
      sensors.size() != solution.assignments.size()) {
    throw std::invalid_argument("render_solution_svg: size mismatch");
  }
  const Canvas cv{options.pixels_per_unit, options.margin_px, diagram.roi};
  const double width = cv.sx(diagram.roi.max_corner.x) + options.margin_px;
  const double height = cv.sy(diagram.roi.min_corner.y) + options.margin_px;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << format_double(width) << "\" height=\"" << format_double(height)
      << "\" viewBox=\"0 0 " << format_double(width) << " "
      << format_double(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  svg << "<g stroke=\"#777777\" stroke-width=\"1\" fill=\"#f5f5f2\">\n";
  for (const VoronoiCell& cell : diagram.cells) {
    svg << "  <polygon points=\"" << polygon_points(cv, cell.polygon)
        << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g fill-rule=\"evenodd\" stroke-width=\"1\">\n";
  for (size_t i = 0; i < sensors.size(); ++i) {
    const OrientationAssignment& asg = solution.assignments[i];
    if (asg.state == OrientationAssignment::State::kSleep) continue;
    const Sensor& sensor = sensors[i];
    const AnnularSector footprint =
        make_sector(asg.effective_location, sensor.r_inner, sensor.r_outer,
                    sensor.theta_h, asg.direction);
    const char* color = kPalette[size_t(sensor.id) % kPalette.size()];
    svg << "  <path d=\"" << footprint_path(cv, footprint) << "\" fill=\""
        << color << "\" fill-opacity=\"0.35\" stroke=\"" << color
        << "\"/>\n";
  }
  svg << "</g>\n";

  if (options.draw_sites) {
    svg << "<g>\n";
    for (size_t i = 0; i < sensors.size(); ++i) {
      const bool asleep = solution.assignments[i].state ==
                          OrientationAssignment::State::kSleep;
      svg << "  <circle cx=\"" << format_double(cv.sx(sensors[i].nominal.x))
          << "\" cy=\"" << format_double(cv.sy(sensors[i].nominal.y))
          << "\" r=\"3\" fill=\"" << (asleep ? "#bbbbbb" : "#222222")
          << "\"/>\n";
    }
    svg << "</g>\n";
  }

  if (options.draw_effective_locations) {
    svg << "<g fill=\"none\" stroke=\"#d62728\" stroke-width=\"1\">\n";
    for (size_t i = 0; i < sensors.size(); ++i) {
      const OrientationAssignment& asg = solution.assignments[i];
      if (asg.state == OrientationAssignment::State::kSleep) continue;
      if (distance(asg.effective_location, sensors[i].nominal) <= kGeomEps) {
        continue;
      }
      const double x = cv.sx(asg.effective_location.x);
      const double y = cv.sy(asg.effective_location.y);
      svg << "  <path d=\"M " << format_double(x - 4) << " "
          << format_double(y) << " H " << format_double(x + 4) << " M "
          << format_double(x) << " " << format_double(y - 4) << " V "
          << format_double(y + 4) << "\"/>\n";
    }
    svg << "</g>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rrfcov
