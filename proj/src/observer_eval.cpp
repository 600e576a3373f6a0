#include "legiplan/observer_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "legiplan/errors.hpp"
#include "legiplan/legibility_cost.hpp"

namespace legiplan {

namespace {

std::vector<double> prior_weights(std::span<const Goal> goals, const PosteriorModel& model) {
  std::vector<double> prior(goals.size(), 1.0 / static_cast<double>(goals.size()));
  if (model.prior.empty()) return prior;
  double sum = 0.0;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    const auto it = model.prior.find(goals[i].id);
    if (it == model.prior.end()) throw ContractViolation("prior has no entry for goal " + goals[i].id);
    if (!(it->second >= 0.0)) throw ContractViolation("prior probabilities must be nonnegative");
    prior[i] = it->second;
    sum += it->second;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ContractViolation("prior must sum to 1");
  return prior;
}

GoalPosterior normalized(std::span<const Goal> goals, const std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  GoalPosterior out;
  for (std::size_t i = 0; i < goals.size(); ++i) out[goals[i].id] = weights[i] / sum;
  return out;
}

}  // namespace

GoalPosterior goal_posterior(const Trajectory& prefix, std::span<const Goal> goals, Point2 start,
                             const PosteriorModel& model) {
  if (goals.empty()) throw ContractViolation("goal posterior needs at least one goal");
  if (!(model.beta >= 0.0) || !std::isfinite(model.beta)) throw ContractViolation("beta must be finite and >= 0");
  const std::vector<double> prior = prior_weights(goals, model);

  const double length = arc_length(prefix);
  if (length == 0.0) return normalized(goals, prior);

  // Detour cost of reaching each goal via the prefix instead of directly.
  const Point2 end = prefix.back();
  std::vector<double> detour(goals.size());
  for (std::size_t i = 0; i < goals.size(); ++i) {
    detour[i] = length + distance(end, goals[i].position) - distance(start, goals[i].position);
  }
  const double shift = *std::min_element(detour.begin(), detour.end());

  std::vector<double> weights(goals.size());
  for (std::size_t i = 0; i < goals.size(); ++i) weights[i] = prior[i] * std::exp(-model.beta * (detour[i] - shift));
  return normalized(goals, weights);
}

double correctness(const GoalPosterior& posterior, const std::string& target_id) {
  const auto it = posterior.find(target_id);
  if (it == posterior.end()) throw ContractViolation("posterior has no entry for target " + target_id);
  return it->second;
}

double legibility_score(std::span<const double> correctness_values) {
  if (correctness_values.empty()) throw ContractViolation("legibility score needs at least one partial");
  double weighted = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < correctness_values.size(); ++k) {
    const double w = 1.0 / static_cast<double>(k + 1);
    weighted += w * correctness_values[k];
    norm += w;
  }
  return weighted / norm;
}

LegibilityReport evaluate_trajectory(const Trajectory& executed, const ScenarioSpec& scenario,
                                     const PosteriorModel& model, const EvaluationOptions& options) {
  if (options.fractions.empty()) throw ContractViolation("at least one partial fraction is required");
  const Goal& target = scenario.target_goal();
  const auto observer = options.mask_fov ? scenario.designated_observer() : std::nullopt;
  const Point2 start = executed.front();

  LegibilityReport report;
  report.mode = scenario.planner.mode;
  report.partial_fractions = options.fractions;
  for (double fraction : options.fractions) {
    Trajectory prefix = arc_length_prefix(executed, fraction);
    if (observer) {
      // Only the part the observer has seen so far counts.
      const auto q = prefix.waypoints();
      std::size_t last_seen = 0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (visibility(q[i], *observer)) last_seen = i;
      }
      std::vector<Point2> seen(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(last_seen) + 1);
      if (seen.size() < 2) seen.push_back(seen.front());
      prefix = Trajectory(std::move(seen), prefix.dt());
    }
    GoalPosterior posterior = goal_posterior(prefix, scenario.goals, start, model);
    const double c = correctness(posterior, target.id);
    const auto best = std::max_element(posterior.begin(), posterior.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    report.argmax_correct.push_back(best->first == target.id ? 1 : 0);
    report.correctness.push_back(c);
    report.posteriors.push_back(std::move(posterior));
  }
  report.score = legibility_score(report.correctness);
  return report;
}

}  // namespace legiplan
