#include "legiplan/task_cost.hpp"

#include <algorithm>
#include <vector>

namespace legiplan {

CostBreakdown task_cost(const Trajectory& traj, Point2 goal, std::span<const Obstacle> obstacles,
                        const RobotState& robot, const TaskCostWeights& weights) {
  const auto q = traj.waypoints();
  const std::size_t n = q.size();
  const double d_safe = weights.d_safe;
  const double v_pref = weights.resolved_v_pref(robot);

  CostBreakdown out;

  double progress = 0.0;
  for (const auto& p : q) progress += distance(p, goal);
  out.goal_term = distance(q.back(), goal) + progress / static_cast<double>(n);

  std::vector<double> margin(n);
  for (std::size_t t = 0; t < n; ++t) {
    margin[t] = clearance(q[t], obstacles) - robot.radius;
    if (margin[t] < 0.0) out.collided = true;
    const double shortfall = std::max(0.0, d_safe - margin[t]) / d_safe;
    out.clearance_term += shortfall * shortfall;
    if (t > 0) out.approach_term += std::max(0.0, margin[t - 1] - margin[t]) / d_safe;
  }

  const double dt2 = traj.dt() * traj.dt();
  for (std::size_t t = 1; t + 1 < n; ++t) {
    const Vec2 accel = q[t + 1] - 2.0 * q[t] + q[t - 1];
    out.smooth_term += dot(accel, accel) / (dt2 * dt2);
  }

  for (const auto& v : velocities(traj)) {
    const double gap = v_pref - norm(v);
    out.speed_term += gap * gap / (v_pref * v_pref);
  }

  out.total = out.collided ? kCollisionCost
                           : weights.w_goal * out.goal_term + weights.w_clearance * out.clearance_term +
                                 weights.w_approach * out.approach_term + weights.w_smooth * out.smooth_term +
                                 weights.w_speed * out.speed_term;
  return out;
}

}  // namespace legiplan
