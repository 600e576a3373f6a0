#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "legiplan/geometry.hpp"
#include "legiplan/scenario.hpp"

namespace legiplan {

using GoalPosterior = std::map<std::string, double>;

/// Synthetic observer: Boltzmann-rational with path length as cost and
/// straight-line distance as the optimal cost-to-go.
struct PosteriorModel {
  double beta = 1.0;
  /// Goal id -> prior probability; empty means uniform.
  std::map<std::string, double> prior;
};

/// P(G | prefix) proportional to prior(G) * exp(-beta (len + d(Q, G) - d(S, G))),
/// where S and Q are the prefix endpoints. A zero-length prefix returns the prior.
GoalPosterior goal_posterior(const Trajectory& prefix, std::span<const Goal> goals, Point2 start,
                             const PosteriorModel& model);

/// Posterior mass on the target. Throws ContractViolation if it is missing.
double correctness(const GoalPosterior& posterior, const std::string& target_id);

/// 1/k-weighted mean of the per-partial correctness values. Throws
/// ContractViolation on an empty list.
double legibility_score(std::span<const double> correctness_values);

struct LegibilityReport {
  std::vector<double> partial_fractions;
  std::vector<GoalPosterior> posteriors;
  std::vector<double> correctness;
  /// 1 when the target is the posterior argmax for that partial (diagnostic).
  std::vector<int> argmax_correct;
  double score = 0.0;
  PlannerMode mode = PlannerMode::kLegible;
};

inline const std::vector<double> kDefaultFractions{0.25, 0.50, 0.75};

struct EvaluationOptions {
  std::vector<double> fractions = kDefaultFractions;
  /// Truncate each partial at the last waypoint the designated observer can see.
  bool mask_fov = false;
};

/// Scores an executed trajectory: per fraction, take the arc-length prefix,
/// infer the goal posterior and read off c_k; then combine into L.
LegibilityReport evaluate_trajectory(const Trajectory& executed, const ScenarioSpec& scenario,
                                     const PosteriorModel& model, const EvaluationOptions& options = {});

}  // namespace legiplan
