#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "legiplan/geometry.hpp"

namespace legiplan {

struct RobotState {
  Point2 position;
  double heading = 0.0;  ///< rad, (-pi, pi]
  double speed = 0.0;    ///< m/s, 0 <= speed <= v_max
  double radius = 0.25;  ///< disc footprint, m
  double v_max = 1.0;
  double a_max = 1.0;
  double omega_max = std::numbers::pi / 2;
};

struct Goal {
  std::string id;
  Point2 position;
  bool is_target = false;
};

inline constexpr double kDefaultFov = 2.0 * std::numbers::pi / 3.0;

struct ObserverState {
  std::string id;
  Point2 position;
  double heading = 0.0;
  double fov = kDefaultFov;  ///< full opening angle, (0, 2pi]
  std::optional<std::string> attached_goal;
};

enum class PlannerMode { kBaseline, kLegible };

const char* to_string(PlannerMode mode);
/// Accepts "baseline" or "legible"; throws ValidationError otherwise.
PlannerMode parse_mode(const std::string& text);

struct PlannerParams {
  double dt = 0.4;
  int horizon_w = 12;
  PlannerMode mode = PlannerMode::kLegible;
  int cem_population = 64;
  int cem_elites = 8;
  int cem_iterations = 4;
  /// Initial sampling std; unset means half of v_max / omega_max.
  std::optional<double> cem_init_std_v;
  std::optional<double> cem_init_std_omega;
  int execute_steps = 1;
  double goal_tolerance = 0.3;
  int max_cycles = 500;
};

/// Weights and shape parameters of the task cost. Every penalty term is
/// dimensionless, so the weights are directly comparable.
struct TaskCostWeights {
  double w_goal = 1.0;
  double w_clearance = 2.0;
  double w_approach = 0.5;
  double w_smooth = 0.1;
  double w_speed = 0.2;
  double d_safe = 0.5;
  /// Preferred cruise speed; unset means 0.8 * v_max.
  std::optional<double> v_pref;

  double resolved_v_pref(const RobotState& robot) const { return v_pref.value_or(0.8 * robot.v_max); }
};

struct LegibilityParams {
  double lambda_sim = 1.0;
  double lambda_fov = 1.0;
  double h_max = 3.0;
  double eps_v = 1e-6;
};

struct ScenarioSpec {
  RobotState robot;
  std::vector<Goal> goals;
  std::vector<ObserverState> observers;
  std::vector<Obstacle> obstacles;
  PlannerParams planner;
  TaskCostWeights task_weights;
  LegibilityParams legibility;
  std::uint64_t seed = 0;

  /// The unique goal with is_target set. Throws ContractViolation if absent.
  const Goal& target_goal() const;
  /// Observer attached to the target goal, else the first observer, else none.
  std::optional<ObserverState> designated_observer() const;
};

/// Checks every scenario invariant and throws ValidationError naming the
/// offending JSON path and rule on the first failure.
void validate(const ScenarioSpec& scenario);

}  // namespace legiplan
