#pragma once

// Reference implementations used only by tests. They take a different
// numerical route from the library on purpose.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "legiplan/geometry.hpp"
#include "legiplan/scenario.hpp"

namespace legiplan::oracle {

/// Deviation angle via atan2 and explicit wrapping instead of acos of a dot product.
inline double theta_dev(Point2 q, const ObserverState& o) {
  const double dx = q.x - o.position.x;
  const double dy = q.y - o.position.y;
  if (dx == 0.0 && dy == 0.0) return 0.0;
  double diff = std::atan2(dy, dx) - o.heading;
  while (diff > std::numbers::pi) diff -= 2.0 * std::numbers::pi;
  while (diff < -std::numbers::pi) diff += 2.0 * std::numbers::pi;
  return std::abs(diff);
}

inline bool visibility(Point2 q, const ObserverState& o) { return oracle::theta_dev(q, o) <= o.fov / 2.0 + 1e-12; }

/// Posterior by the unnormalized ratio form exp(-C(S->Q) - C*(Q->G)) / exp(-C*(S->G)).
inline std::vector<double> posterior(const std::vector<Point2>& prefix, const std::vector<Point2>& goals,
                                     double beta) {
  double length = 0.0;
  for (std::size_t i = 1; i < prefix.size(); ++i) {
    length += std::sqrt((prefix[i].x - prefix[i - 1].x) * (prefix[i].x - prefix[i - 1].x) +
                        (prefix[i].y - prefix[i - 1].y) * (prefix[i].y - prefix[i - 1].y));
  }
  const Point2 s = prefix.front();
  const Point2 q = prefix.back();
  std::vector<double> out;
  double sum = 0.0;
  for (const auto& g : goals) {
    const double num = std::exp(-beta * length) * std::exp(-beta * std::hypot(g.x - q.x, g.y - q.y));
    const double den = std::exp(-beta * std::hypot(g.x - s.x, g.y - s.y));
    out.push_back(num / den);
    sum += num / den;
  }
  for (auto& p : out) p /= sum;
  return out;
}

/// Mean of the signed perpendicular offsets of `points` from the chord a->b;
/// positive is left of the chord.
inline double mean_lateral_offset(std::span<const Point2> points, Point2 a, Point2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  double sum = 0.0;
  for (const auto& p : points) sum += (dx * (p.y - a.y) - dy * (p.x - a.x)) / len;
  return sum / static_cast<double>(points.size());
}

}  // namespace legiplan::oracle
