#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "legiplan/geometry.hpp"
#include "legiplan/legibility_cost.hpp"
#include "legiplan/scenario.hpp"
#include "legiplan/task_cost.hpp"

namespace legiplan {

/// Unicycle command held for one step.
struct Control {
  double v = 0.0;      ///< m/s
  double omega = 0.0;  ///< rad/s

  friend bool operator==(const Control&, const Control&) = default;
};

using ControlSequence = std::vector<Control>;

/// Clips a sequence in order so that 0 <= v <= v_max, |omega| <= omega_max and
/// consecutive speeds (starting from robot.speed) differ by at most a_max * dt.
void clip_controls(ControlSequence& controls, const RobotState& robot, double dt);

/// Forward-integrates the unicycle: heading first, then position along the
/// new heading. Returns controls.size() + 1 waypoints starting at the robot.
Trajectory rollout(const RobotState& state, const ControlSequence& controls, double dt);

/// Robot state after applying the first `steps` controls.
RobotState advance(const RobotState& state, const ControlSequence& controls, std::size_t steps, double dt);

/// Headings at every waypoint of rollout(state, controls, dt).
std::vector<double> rollout_headings(const RobotState& state, const ControlSequence& controls, double dt);

/// Raised when no collision-free candidate exists after optimization.
class PlannerFailure : public std::runtime_error {
 public:
  PlannerFailure(const std::string& what, CostBreakdown best, std::vector<Point2> partial_path = {})
      : std::runtime_error(what), best_(best), partial_path_(std::move(partial_path)) {}

  const CostBreakdown& best() const noexcept { return best_; }
  /// Waypoints executed before the failing cycle (closed loop only).
  const std::vector<Point2>& partial_path() const noexcept { return partial_path_; }

 private:
  CostBreakdown best_;
  std::vector<Point2> partial_path_;
};

/// Outcome of one cross-entropy run.
struct CemResult {
  ControlSequence controls;
  CostBreakdown breakdown;
  /// Best total seen after each iteration; non-increasing.
  std::vector<double> best_per_iteration;
};

using TrajectoryObjective = std::function<CostBreakdown(const Trajectory&)>;

struct CemSettings {
  int population = 64;
  int elites = 8;
  int iterations = 4;
  double std_v = 0.5;
  double std_omega = 0.5;
  std::uint64_t seed = 0;
  /// Distinguishes independent optimizations that share a seed.
  std::uint64_t stream = 0;
  /// Worker threads for candidate scoring; 0 picks worker_count().
  int workers = 0;
};

/// Cross-entropy method over per-step Gaussian controls. Candidate 0 of each
/// iteration is the current mean; every other candidate draws from a random
/// stream keyed by (seed, stream, iteration, candidate index), so the result
/// does not depend on how scoring is scheduled. The optional incumbent takes
/// part in best-so-far tracking only, never in the elite refit.
CemResult cross_entropy_optimize(const RobotState& robot, double dt, const ControlSequence& initial_mean,
                                 const CemSettings& settings, const TrajectoryObjective& objective,
                                 const ControlSequence* incumbent = nullptr);

/// Pure-pursuit control sequence towards `goal`: turn at the bounded rate,
/// cruise at v_pref, slow down with heading error and near the goal.
ControlSequence heading_seed(const RobotState& robot, Point2 goal, double v_pref, int steps, double dt);

struct PlanResult {
  Trajectory trajectory;
  ControlSequence controls;
  CostBreakdown breakdown;
  PredictedPathSet predictions;
  int cycles_used = 1;
  bool reached = false;
};

/// One planning cycle from scenario.robot: per-goal predictions under the
/// task cost, then (legible mode) a second optimization of the combined
/// objective. Throws ContractViolation without goals and PlannerFailure when
/// the chosen plan still collides.
PlanResult plan_once(const ScenarioSpec& scenario, std::uint64_t seed);

struct ClosedLoopResult {
  std::vector<PlanResult> plans;
  Trajectory executed;
  std::vector<double> headings;   ///< per executed waypoint
  ControlSequence applied;        ///< control that led to waypoint i; entry 0 is (speed, 0)
  int cycles_used = 0;
  bool reached = false;
};

/// Receding-horizon loop: plan, execute the first execute_steps controls,
/// replan with seed + cycle index, until within goal_tolerance of the target
/// or max_cycles is spent. PlannerFailure carries the partial path.
ClosedLoopResult run_closed_loop(const ScenarioSpec& scenario);

}  // namespace legiplan
