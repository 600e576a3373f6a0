#include "legiplan/legibility_cost.hpp"

#include <algorithm>
#include <cmath>

#include "legiplan/errors.hpp"

namespace legiplan {

double theta_dev(Point2 q, const ObserverState& observer) {
  const Vec2 offset = q - observer.position;
  const double length = norm(offset);
  if (length == 0.0) return 0.0;
  const double c = dot(offset / length, unit_vector(observer.heading));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

bool visibility(Point2 q, const ObserverState& observer) {
  return theta_dev(q, observer) <= observer.fov / 2.0 + kFovBoundaryTolerance;
}

double h_weight(Point2 q, Point2 g_star, Point2 g, double h_max) {
  if (g == g_star) return 1.0;
  const double to_target = distance(q, g_star);
  if (to_target == 0.0) return 0.0;
  const double to_goal = distance(q, g);
  if (to_goal == 0.0) return h_max;
  return std::min(to_target / to_goal, h_max);
}

double velocity_cosine(Vec2 a, Vec2 b, double eps_v) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na < eps_v || nb < eps_v) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

double weighted_similarity(const Trajectory& candidate, const Trajectory& predicted, const Goal& goal,
                           Point2 g_star, const std::optional<ObserverState>& observer,
                           const LegibilityParams& params) {
  if (candidate.size() != predicted.size()) {
    throw ContractViolation("candidate and predicted path differ in length");
  }
  const auto va = velocities(candidate);
  const auto vb = velocities(predicted);
  double total = 0.0;
  for (std::size_t t = 0; t < candidate.size(); ++t) {
    const Point2 q = candidate[t];
    if (observer && !visibility(q, *observer)) continue;
    const double h = goal.is_target ? 1.0 : h_weight(q, g_star, goal.position, params.h_max);
    total += h * velocity_cosine(va[t], vb[t], params.eps_v);
  }
  return total;
}

double sim_cost(const Trajectory& candidate, const PredictedPathSet& predictions, std::span<const Goal> goals,
                const std::optional<ObserverState>& observer, const LegibilityParams& params) {
  const auto target = std::find_if(goals.begin(), goals.end(), [](const Goal& g) { return g.is_target; });
  if (target == goals.end()) throw ContractViolation("goal list has no target");

  double unintended = 0.0;
  double intended = 0.0;
  for (const auto& goal : goals) {
    const auto it = predictions.find(goal.id);
    if (it == predictions.end()) throw ContractViolation("no predicted path for goal " + goal.id);
    const double s = weighted_similarity(candidate, it->second, goal, target->position, observer, params);
    (goal.is_target ? intended : unintended) += s;
  }
  return unintended - intended;
}

double fov_cost(const Trajectory& candidate, const ObserverState& observer) {
  const double half_fov = observer.fov / 2.0;
  double total = 0.0;
  for (const auto& q : candidate.waypoints()) total += std::tanh(theta_dev(q, observer) / half_fov);
  return total;
}

CostBreakdown legibility_aware_cost(const Trajectory& candidate, const Goal& target,
                                    const PredictedPathSet& predictions, std::span<const Goal> goals,
                                    const std::optional<ObserverState>& observer,
                                    std::span<const Obstacle> obstacles, const RobotState& robot,
                                    const TaskCostWeights& task_weights, const LegibilityParams& params) {
  CostBreakdown out = task_cost(candidate, target.position, obstacles, robot, task_weights);
  out.sim_term = sim_cost(candidate, predictions, goals, observer, params);
  out.fov_term = observer ? fov_cost(candidate, *observer) : 0.0;
  if (!out.collided) out.total += params.lambda_sim * out.sim_term + params.lambda_fov * out.fov_term;
  return out;
}

}  // namespace legiplan
