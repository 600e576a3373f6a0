#include "legiplan/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "legiplan/errors.hpp"

namespace legiplan {

double wrap_angle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, kTwoPi);
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

namespace {

double circle_distance(Point2 p, const Circle& c) { return distance(p, c.center) - c.radius; }

double rect_distance(Point2 p, const Rect& r) {
  const Point2 center = 0.5 * (r.min + r.max);
  const Point2 half = 0.5 * (r.max - r.min);
  const double dx = std::abs(p.x - center.x) - half.x;
  const double dy = std::abs(p.y - center.y) - half.y;
  const double outside = std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
  const double inside = std::min(std::max(dx, dy), 0.0);
  return outside + inside;
}

}  // namespace

double signed_distance(Point2 p, const Obstacle& obstacle) {
  return std::visit(
      [p](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return circle_distance(p, shape);
        } else {
          return rect_distance(p, shape);
        }
      },
      obstacle);
}

double clearance(Point2 p, std::span<const Obstacle> obstacles) {
  double best = kNoObstacleClearance;
  for (const auto& obstacle : obstacles) best = std::min(best, signed_distance(p, obstacle));
  return best;
}

Trajectory::Trajectory(std::vector<Point2> waypoints, double dt) : waypoints_(std::move(waypoints)), dt_(dt) {
  if (waypoints_.size() < 2) throw ContractViolation("trajectory needs at least two waypoints");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw ContractViolation("trajectory dt must be positive and finite");
  for (const auto& q : waypoints_) {
    if (!is_finite(q)) throw ContractViolation("trajectory waypoint is not finite");
  }
}

std::vector<Vec2> velocities(const Trajectory& traj) {
  const auto q = traj.waypoints();
  std::vector<Vec2> out(q.size());
  for (std::size_t t = 0; t + 1 < q.size(); ++t) out[t] = (q[t + 1] - q[t]) / traj.dt();
  out.back() = out[out.size() - 2];
  return out;
}

double arc_length(const Trajectory& traj) {
  const auto q = traj.waypoints();
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < q.size(); ++t) total += distance(q[t], q[t + 1]);
  return total;
}

Trajectory arc_length_prefix(const Trajectory& traj, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::domain_error("prefix fraction must lie in [0, 1]");
  if (fraction == 1.0) return traj;
  const auto q = traj.waypoints();
  const double target = fraction * arc_length(traj);

  std::vector<Point2> prefix{q[0]};
  double walked = 0.0;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    const double segment = distance(q[i], q[i + 1]);
    if (walked + segment >= target) {
      const double ratio = segment > 0.0 ? (target - walked) / segment : 0.0;
      prefix.push_back(ratio >= 1.0 ? q[i + 1] : q[i] + ratio * (q[i + 1] - q[i]));
      return Trajectory(std::move(prefix), traj.dt());
    }
    walked += segment;
    prefix.push_back(q[i + 1]);
  }
  return traj;
}

}  // namespace legiplan
