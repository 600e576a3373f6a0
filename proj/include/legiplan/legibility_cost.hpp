#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "legiplan/geometry.hpp"
#include "legiplan/scenario.hpp"
#include "legiplan/task_cost.hpp"

namespace legiplan {

/// Predicted local path per goal id, as an observer would expect it.
using PredictedPathSet = std::map<std::string, Trajectory>;

/// Slack on the inclusive FOV boundary test, absorbing acos round-off.
inline constexpr double kFovBoundaryTolerance = 1e-12;

/// Angle in [0, pi] between the observer's view axis and the ray towards q.
/// Returns 0 when q coincides with the observer.
double theta_dev(Point2 q, const ObserverState& observer);

/// True iff q lies inside the observer's (infinitely deep) view wedge,
/// boundary included.
bool visibility(Point2 q, const ObserverState& observer);

/// Goal-clarity weight min(d(q, g*) / d(q, g), h_max). Exactly 1 when g is
/// g* itself, h_max when q sits on g, 0 when q sits on g*.
double h_weight(Point2 q, Point2 g_star, Point2 g, double h_max);

/// Cosine between two velocities, or 0 when either norm is below eps_v.
double velocity_cosine(Vec2 a, Vec2 b, double eps_v);

/// Visibility- and goal-weighted cosine similarity between the candidate
/// and a predicted path:  sum_t v(q_t) h(q_t) cos(v_t, v~_t).
///
/// With no observer every waypoint counts as visible. Throws
/// ContractViolation when the two trajectories differ in length.
double weighted_similarity(const Trajectory& candidate, const Trajectory& predicted, const Goal& goal,
                           Point2 g_star, const std::optional<ObserverState>& observer,
                           const LegibilityParams& params);

/// Similarity to every unintended goal's prediction minus similarity to the
/// target's. Throws ContractViolation if a goal has no prediction or the goal
/// list has no target.
double sim_cost(const Trajectory& candidate, const PredictedPathSet& predictions, std::span<const Goal> goals,
                const std::optional<ObserverState>& observer, const LegibilityParams& params);

/// sum_t tanh(theta_dev(q_t) / (fov / 2)); in [0, w + 1).
double fov_cost(const Trajectory& candidate, const ObserverState& observer);

/// C_Task + lambda_sim * C_Sim + lambda_fov * C_FOV. A collided candidate
/// keeps the collision total unchanged. Without an observer C_FOV is 0.
CostBreakdown legibility_aware_cost(const Trajectory& candidate, const Goal& target,
                                    const PredictedPathSet& predictions, std::span<const Goal> goals,
                                    const std::optional<ObserverState>& observer,
                                    std::span<const Obstacle> obstacles, const RobotState& robot,
                                    const TaskCostWeights& task_weights, const LegibilityParams& params);

}  // namespace legiplan
