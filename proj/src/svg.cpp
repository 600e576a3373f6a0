#include "legiplan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace legiplan {

namespace {

constexpr double kPixelsPerMeter = 80.0;
constexpr double kMargin = 1.0;
constexpr int kWedgeArcPoints = 32;

/// Fixed-point text for a coordinate; negative zero is folded into zero.
std::string num(double v) {
  if (std::abs(v) < 5e-5) v = 0.0;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", v);
  return buffer;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// SVG's y axis points down; world y points up.
std::string px(Point2 p) { return num(p.x) + "," + num(-p.y); }

std::string points_attr(std::span<const Point2> points) {
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) out += ' ';
    out += px(points[i]);
  }
  return out;
}

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(Point2 p, double pad = 0.0) {
    min_x = std::min(min_x, p.x - pad);
    min_y = std::min(min_y, p.y - pad);
    max_x = std::max(max_x, p.x + pad);
    max_y = std::max(max_y, p.y + pad);
  }
};

Bounds scene_bounds(const ScenarioSpec& scenario) {
  Bounds b;
  b.add(scenario.robot.position, scenario.robot.radius);
  for (const auto& g : scenario.goals) b.add(g.position);
  for (const auto& o : scenario.observers) b.add(o.position);
  for (const auto& obstacle : scenario.obstacles) {
    if (const auto* c = std::get_if<Circle>(&obstacle)) {
      b.add(c->center, c->radius);
    } else {
      const auto& r = std::get<Rect>(obstacle);
      b.add(r.min);
      b.add(r.max);
    }
  }
  b.min_x -= kMargin;
  b.min_y -= kMargin;
  b.max_x += kMargin;
  b.max_y += kMargin;
  return b;
}

std::string marker_id(const char* color) { return std::string("arrow-") + (color + 1); }

const char* style_color(TrajectoryStyle style) {
  switch (style) {
    case TrajectoryStyle::kLegible: return kLegibleColor;
    case TrajectoryStyle::kBaseline: return kBaselineColor;
    case TrajectoryStyle::kOther: break;
  }
  return "#1f77b4";
}

}  // namespace

std::string render_svg(const ScenarioSpec& scenario, const std::vector<LabeledTrajectory>& trajectories,
                       const std::optional<PredictedPathSet>& predictions) {
  const Bounds b = scene_bounds(scenario);
  const double width = b.max_x - b.min_x;
  const double height = b.max_y - b.min_y;
  const double reach = std::hypot(width, height);
  const double stroke = 0.04;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width * kPixelsPerMeter) << "\" height=\""
      << num(height * kPixelsPerMeter) << "\" viewBox=\"" << num(b.min_x) << ' ' << num(-b.max_y) << ' '
      << num(width) << ' ' << num(height) << "\">\n";
  svg << "<defs>\n";
  for (const auto* color : {kTargetPredictionColor, kOtherPredictionColor}) {
    svg << "<marker id=\"" << marker_id(color) << "\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
        << "markerWidth=\"4\" markerHeight=\"4\" orient=\"auto-start-reverse\">"
        << "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"" << color << "\"/></marker>\n";
  }
  svg << "</defs>\n";
  svg << "<rect x=\"" << num(b.min_x) << "\" y=\"" << num(-b.max_y) << "\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" fill=\"#ffffff\"/>\n";

  svg << "<g id=\"fov\">\n";
  for (const auto& o : scenario.observers) {
    std::vector<Point2> wedge{o.position};
    for (int i = 0; i <= kWedgeArcPoints; ++i) {
      const double angle = o.heading - o.fov / 2.0 + o.fov * i / kWedgeArcPoints;
      wedge.push_back(o.position + reach * unit_vector(angle));
    }
    svg << "<polygon points=\"" << points_attr(wedge) << "\" fill=\"" << kFovColor
        << "\" fill-opacity=\"0.15\" stroke=\"" << kFovColor << "\" stroke-width=\"" << num(stroke / 2) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"obstacles\">\n";
  for (const auto& obstacle : scenario.obstacles) {
    if (const auto* c = std::get_if<Circle>(&obstacle)) {
      svg << "<circle cx=\"" << num(c->center.x) << "\" cy=\"" << num(-c->center.y) << "\" r=\"" << num(c->radius)
          << "\" fill=\"" << kObstacleColor << "\"/>\n";
    } else {
      const auto& r = std::get<Rect>(obstacle);
      svg << "<rect x=\"" << num(r.min.x) << "\" y=\"" << num(-r.max.y) << "\" width=\"" << num(r.max.x - r.min.x)
          << "\" height=\"" << num(r.max.y - r.min.y) << "\" fill=\"" << kObstacleColor << "\"/>\n";
    }
  }
  svg << "</g>\n";

  if (predictions) {
    svg << "<g id=\"predictions\">\n";
    for (const auto& goal : scenario.goals) {
      const auto it = predictions->find(goal.id);
      if (it == predictions->end()) continue;
      const char* color = goal.is_target ? kTargetPredictionColor : kOtherPredictionColor;
      svg << "<polyline data-goal=\"" << xml_escape(goal.id) << "\" points=\"" << points_attr(it->second.waypoints())
          << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(stroke)
          << "\" marker-end=\"url(#" << marker_id(color) << ")\"/>\n";
    }
    svg << "</g>\n";
  }

  svg << "<g id=\"trajectories\">\n";
  for (const auto& labeled : trajectories) {
    svg << "<polyline data-label=\"" << xml_escape(labeled.label) << "\" points=\""
        << points_attr(labeled.trajectory.waypoints()) << "\" fill=\"none\" stroke=\"" << style_color(labeled.style)
        << "\" stroke-width=\"" << num(2 * stroke) << "\" stroke-linejoin=\"round\"/>\n";
  }
  svg << "</g>\n";

  const double font = 0.3;
  svg << "<g id=\"goals\" font-family=\"sans-serif\" font-size=\"" << num(font) << "\">\n";
  for (const auto& g : scenario.goals) {
    svg << "<circle cx=\"" << num(g.position.x) << "\" cy=\"" << num(-g.position.y) << "\" r=\"0.15\" fill=\""
        << (g.is_target ? "#ffd700" : "#ffffff") << "\" stroke=\"#000000\" stroke-width=\"" << num(stroke / 2)
        << "\"/>\n";
    svg << "<text x=\"" << num(g.position.x + 0.2) << "\" y=\"" << num(-g.position.y - 0.2) << "\">"
        << xml_escape(g.id) << (g.is_target ? " (G*)" : "") << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"observers\">\n";
  for (const auto& o : scenario.observers) {
    svg << "<circle cx=\"" << num(o.position.x) << "\" cy=\"" << num(-o.position.y) << "\" r=\"0.12\" fill=\""
        << kFovColor << "\"/>\n";
    svg << "<line x1=\"" << num(o.position.x) << "\" y1=\"" << num(-o.position.y) << "\" x2=\""
        << num(o.position.x + 0.4 * std::cos(o.heading)) << "\" y2=\"" << num(-(o.position.y + 0.4 * std::sin(o.heading)))
        << "\" stroke=\"#000000\" stroke-width=\"" << num(stroke / 2) << "\"/>\n";
  }
  svg << "</g>\n";

  const Point2 s = scenario.robot.position;
  svg << "<circle id=\"robot\" cx=\"" << num(s.x) << "\" cy=\"" << num(-s.y) << "\" r=\"" << num(scenario.robot.radius)
      << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << num(stroke) << "\"/>\n";

  svg << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"" << num(font) << "\">\n";
  double y = b.max_y - 0.4;
  for (const auto& labeled : trajectories) {
    svg << "<text x=\"" << num(b.min_x + 0.2) << "\" y=\"" << num(-y) << "\" fill=\"" << style_color(labeled.style)
        << "\">" << xml_escape(labeled.label) << "</text>\n";
    y -= 0.4;
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace legiplan
