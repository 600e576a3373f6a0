#include "legiplan/scenario.hpp"

#include <algorithm>
#include <numbers>
#include <set>

#include "legiplan/errors.hpp"

namespace legiplan {

const char* to_string(PlannerMode mode) { return mode == PlannerMode::kBaseline ? "baseline" : "legible"; }

PlannerMode parse_mode(const std::string& text) {
  if (text == "baseline") return PlannerMode::kBaseline;
  if (text == "legible") return PlannerMode::kLegible;
  throw ValidationError("planner.mode", "mode must be baseline or legible", text);
}

const Goal& ScenarioSpec::target_goal() const {
  const auto it = std::find_if(goals.begin(), goals.end(), [](const Goal& g) { return g.is_target; });
  if (it == goals.end()) throw ContractViolation("scenario has no target goal");
  return *it;
}

std::optional<ObserverState> ScenarioSpec::designated_observer() const {
  if (observers.empty()) return std::nullopt;
  const auto target = std::find_if(goals.begin(), goals.end(), [](const Goal& g) { return g.is_target; });
  if (target != goals.end()) {
    for (const auto& observer : observers) {
      if (observer.attached_goal == target->id) return observer;
    }
  }
  return observers.front();
}

namespace {

std::string indexed(const char* array, std::size_t i) { return std::string(array) + "[" + std::to_string(i) + "]"; }

void require(bool ok, const std::string& path, const char* rule) {
  if (!ok) throw ValidationError(path, rule);
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }
bool nonnegative_finite(double v) { return v >= 0.0 && std::isfinite(v); }

void validate_obstacle(const Obstacle& obstacle, const std::string& path) {
  if (const auto* c = std::get_if<Circle>(&obstacle)) {
    require(is_finite(c->center), path, "coordinates must be finite");
    require(positive_finite(c->radius), path + ".radius", "radius must be positive");
  } else {
    const auto& r = std::get<Rect>(obstacle);
    require(is_finite(r.min) && is_finite(r.max), path, "coordinates must be finite");
    require(r.min.x < r.max.x && r.min.y < r.max.y, path, "rectangle min must be below max componentwise");
  }
}

}  // namespace

void validate(const ScenarioSpec& s) {
  const RobotState& robot = s.robot;
  require(is_finite(robot.position), "robot", "coordinates must be finite");
  require(std::isfinite(robot.heading), "robot.heading_deg", "heading must be finite");
  require(positive_finite(robot.radius), "robot.radius", "radius must be positive");
  require(positive_finite(robot.v_max), "robot.v_max", "v_max must be positive");
  require(positive_finite(robot.a_max), "robot.a_max", "a_max must be positive");
  require(positive_finite(robot.omega_max), "robot.omega_max_deg", "omega_max must be positive");
  require(robot.speed >= 0.0 && robot.speed <= robot.v_max, "robot.speed", "speed must lie in [0, v_max]");

  for (std::size_t i = 0; i < s.obstacles.size(); ++i) validate_obstacle(s.obstacles[i], indexed("obstacles", i));

  require(!s.goals.empty(), "goals", "at least one goal");
  std::set<std::string> ids;
  std::size_t targets = 0;
  for (std::size_t i = 0; i < s.goals.size(); ++i) {
    const Goal& g = s.goals[i];
    const auto path = indexed("goals", i);
    require(!g.id.empty(), path + ".id", "id must be non-empty");
    require(ids.insert(g.id).second, path + ".id", "goal ids must be unique");
    require(is_finite(g.position), path, "coordinates must be finite");
    targets += g.is_target ? 1 : 0;
  }
  require(targets == 1, "goals", "exactly one target");

  std::set<std::string> observer_ids;
  for (std::size_t i = 0; i < s.observers.size(); ++i) {
    const ObserverState& o = s.observers[i];
    const auto path = indexed("observers", i);
    require(!o.id.empty(), path + ".id", "id must be non-empty");
    require(observer_ids.insert(o.id).second, path + ".id", "observer ids must be unique");
    require(is_finite(o.position) && std::isfinite(o.heading), path, "coordinates must be finite");
    require(o.fov > 0.0 && o.fov <= 2.0 * std::numbers::pi + 1e-12, path + ".fov_deg", "fov must lie in (0, 360]");
    if (o.attached_goal) {
      require(ids.count(*o.attached_goal) == 1, path + ".attached_goal", "attached goal must name a goal");
    }
  }

  const PlannerParams& p = s.planner;
  require(positive_finite(p.dt), "planner.dt", "dt must be positive");
  require(p.horizon_w >= 2, "planner.horizon_w", "horizon_w must be at least 2");
  require(p.cem_population >= 8, "planner.cem_population", "cem_population must be at least 8");
  require(p.cem_elites >= 2, "planner.cem_elites", "cem_elites must be at least 2");
  require(p.cem_elites <= p.cem_population, "planner.cem_elites", "cem_elites must not exceed cem_population");
  require(p.cem_iterations >= 1, "planner.cem_iterations", "cem_iterations must be at least 1");
  require(!p.cem_init_std_v || positive_finite(*p.cem_init_std_v), "planner.cem_init_std_v",
          "initial std must be positive");
  require(!p.cem_init_std_omega || positive_finite(*p.cem_init_std_omega), "planner.cem_init_std_omega_deg",
          "initial std must be positive");
  require(p.execute_steps >= 1, "planner.execute_steps", "execute_steps must be at least 1");
  require(p.execute_steps <= p.horizon_w, "planner.execute_steps", "execute_steps must not exceed horizon_w");
  require(positive_finite(p.goal_tolerance), "planner.goal_tolerance", "goal_tolerance must be positive");
  require(p.max_cycles >= 1, "planner.max_cycles", "max_cycles must be at least 1");
  require(robot.v_max <= robot.a_max * p.horizon_w * p.dt, "planner",
          "v_max <= a_max * horizon_w * dt (robot must be able to stop within the horizon)");

  const TaskCostWeights& w = s.task_weights;
  require(nonnegative_finite(w.w_goal), "task_weights.w_goal", "weight must be finite and nonnegative");
  require(nonnegative_finite(w.w_clearance), "task_weights.w_clearance", "weight must be finite and nonnegative");
  require(nonnegative_finite(w.w_approach), "task_weights.w_approach", "weight must be finite and nonnegative");
  require(nonnegative_finite(w.w_smooth), "task_weights.w_smooth", "weight must be finite and nonnegative");
  require(nonnegative_finite(w.w_speed), "task_weights.w_speed", "weight must be finite and nonnegative");
  require(positive_finite(w.d_safe), "task_weights.d_safe", "d_safe must be positive");
  require(!w.v_pref || positive_finite(*w.v_pref), "task_weights.v_pref", "v_pref must be positive");

  const LegibilityParams& l = s.legibility;
  require(nonnegative_finite(l.lambda_sim), "legibility.lambda_sim", "lambda must be finite and nonnegative");
  require(nonnegative_finite(l.lambda_fov), "legibility.lambda_fov", "lambda must be finite and nonnegative");
  require(positive_finite(l.h_max), "legibility.h_max", "h_max must be positive");
  require(positive_finite(l.eps_v), "legibility.eps_v", "eps_v must be positive");

  const double start_clearance = clearance(robot.position, s.obstacles);
  require(start_clearance >= robot.radius, "robot", "start clearance must be at least the robot radius");
  for (std::size_t i = 0; i < s.goals.size(); ++i) {
    require(clearance(s.goals[i].position, s.obstacles) >= robot.radius, indexed("goals", i),
            "goal clearance must be at least the robot radius");
  }
}

}  // namespace legiplan
