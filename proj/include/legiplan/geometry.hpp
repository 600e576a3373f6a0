#pragma once

#include <cmath>
#include <span>
#include <variant>
#include <vector>

namespace legiplan {

/// Planar point or displacement in meters (velocities reuse it in m/s).
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

using Vec2 = Point2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

struct Circle {
  Point2 center;
  double radius = 0.0;
};

/// Axis-aligned rectangle.
struct Rect {
  Point2 min;
  Point2 max;
};

using Obstacle = std::variant<Circle, Rect>;

/// Clearance reported when there are no obstacles at all.
inline constexpr double kNoObstacleClearance = 1e9;

/// Exact signed distance to one obstacle; negative inside.
double signed_distance(Point2 p, const Obstacle& obstacle);

/// Minimum signed distance over all obstacles, or kNoObstacleClearance for an
/// empty list. The robot footprint is not subtracted here.
double clearance(Point2 p, std::span<const Obstacle> obstacles);

/// Timestamped waypoint sequence q_0..q_w with a fixed step.
///
/// Always holds at least two finite waypoints and a positive, finite dt;
/// the constructor throws ContractViolation otherwise.
class Trajectory {
 public:
  Trajectory(std::vector<Point2> waypoints, double dt);

  std::span<const Point2> waypoints() const noexcept { return waypoints_; }
  const Point2& operator[](std::size_t i) const { return waypoints_[i]; }
  const Point2& front() const { return waypoints_.front(); }
  const Point2& back() const { return waypoints_.back(); }
  double dt() const noexcept { return dt_; }
  /// Number of waypoints, w + 1.
  std::size_t size() const noexcept { return waypoints_.size(); }
  /// Horizon index w of the last waypoint.
  std::size_t horizon() const noexcept { return waypoints_.size() - 1; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<Point2> waypoints_;
  double dt_;
};

/// Finite-difference velocities (q_{t+1} - q_t) / dt for t < w, with the
/// last one repeated at index w. Always returns size() entries.
std::vector<Vec2> velocities(const Trajectory& traj);

/// Sum of Euclidean segment lengths.
double arc_length(const Trajectory& traj);

/// Prefix covering `fraction` of the total arc length. The final waypoint is
/// interpolated on the segment that contains the cut. Fraction 0 yields the
/// first waypoint twice. Throws std::domain_error outside [0, 1].
Trajectory arc_length_prefix(const Trajectory& traj, double fraction);

}  // namespace legiplan
