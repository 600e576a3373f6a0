#pragma once

#include <span>

#include "legiplan/geometry.hpp"
#include "legiplan/scenario.hpp"

namespace legiplan {

/// Total assigned to any trajectory with a waypoint inside an obstacle. Large
/// but finite so candidate ranking stays a strict total order.
inline constexpr double kCollisionCost = 1e12;

/// Per-term costs of one candidate. The task terms are unweighted; sim_term
/// and fov_term are the raw C_Sim / C_FOV values before their lambdas.
struct CostBreakdown {
  double goal_term = 0.0;
  double clearance_term = 0.0;
  double approach_term = 0.0;
  double smooth_term = 0.0;
  double speed_term = 0.0;
  double sim_term = 0.0;
  double fov_term = 0.0;
  double total = 0.0;
  bool collided = false;
};

/// Weighted sum of goal progress, clearance, obstacle approach, smoothness
/// and speed-tracking penalties:
///
///   J_goal = d(q_w, g) + mean_t d(q_t, g)
///   J_clr  = sum_t (max(0, d_safe - c_t) / d_safe)^2
///   J_app  = sum_{t>=1} max(0, c_{t-1} - c_t) / d_safe
///   J_sm   = sum_{t=1}^{w-1} |q_{t+1} - 2 q_t + q_{t-1}|^2 / dt^4
///   J_sp   = sum_t (v_pref - |v_t|)^2 / v_pref^2
///
/// with c_t the footprint-adjusted clearance. Any c_t < 0 marks the
/// candidate collided and sets total to kCollisionCost.
CostBreakdown task_cost(const Trajectory& traj, Point2 goal, std::span<const Obstacle> obstacles,
                        const RobotState& robot, const TaskCostWeights& weights);

}  // namespace legiplan
