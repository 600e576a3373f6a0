#include "legiplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "legiplan/errors.hpp"
#include "legiplan/parallel.hpp"

namespace legiplan {

namespace {

struct Pose {
  Point2 position;
  double heading;
};

Pose step(Pose pose, const Control& u, double dt) {
  const double heading = wrap_angle(pose.heading + u.omega * dt);
  return {pose.position + (u.v * dt) * unit_vector(heading), heading};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for one candidate's private random stream.
std::uint64_t candidate_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t iteration,
                            std::uint64_t candidate) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ stream);
  key = splitmix64(key ^ iteration);
  return splitmix64(key ^ candidate);
}

}  // namespace

void clip_controls(ControlSequence& controls, const RobotState& robot, double dt) {
  const double dv = robot.a_max * dt;
  double previous = robot.speed;
  for (auto& u : controls) {
    const double lo = std::max(0.0, previous - dv);
    const double hi = std::min(robot.v_max, previous + dv);
    u.v = std::clamp(u.v, lo, std::max(lo, hi));
    u.omega = std::clamp(u.omega, -robot.omega_max, robot.omega_max);
    previous = u.v;
  }
}

Trajectory rollout(const RobotState& state, const ControlSequence& controls, double dt) {
  std::vector<Point2> waypoints;
  waypoints.reserve(controls.size() + 1);
  Pose pose{state.position, state.heading};
  waypoints.push_back(pose.position);
  for (const auto& u : controls) {
    pose = step(pose, u, dt);
    waypoints.push_back(pose.position);
  }
  return Trajectory(std::move(waypoints), dt);
}

std::vector<double> rollout_headings(const RobotState& state, const ControlSequence& controls, double dt) {
  std::vector<double> headings{state.heading};
  Pose pose{state.position, state.heading};
  for (const auto& u : controls) {
    pose = step(pose, u, dt);
    headings.push_back(pose.heading);
  }
  return headings;
}

RobotState advance(const RobotState& state, const ControlSequence& controls, std::size_t steps, double dt) {
  RobotState next = state;
  Pose pose{state.position, state.heading};
  for (std::size_t k = 0; k < std::min(steps, controls.size()); ++k) {
    pose = step(pose, controls[k], dt);
    next.speed = controls[k].v;
  }
  next.position = pose.position;
  next.heading = pose.heading;
  return next;
}

ControlSequence heading_seed(const RobotState& robot, Point2 goal, double v_pref, int steps, double dt) {
  ControlSequence controls;
  controls.reserve(static_cast<std::size_t>(steps));
  Pose pose{robot.position, robot.heading};
  double speed = robot.speed;
  for (int k = 0; k < steps; ++k) {
    const Vec2 to_goal = goal - pose.position;
    const double dist = norm(to_goal);
    const double error = dist > 0.0 ? wrap_angle(std::atan2(to_goal.y, to_goal.x) - pose.heading) : 0.0;
    Control u;
    u.omega = std::clamp(error / dt, -robot.omega_max, robot.omega_max);
    const double braking = std::sqrt(2.0 * robot.a_max * dist);
    const double wanted = std::min({v_pref * std::max(0.0, std::cos(error)), braking, dist / dt});
    u.v = std::clamp(wanted, std::max(0.0, speed - robot.a_max * dt), std::min(robot.v_max, speed + robot.a_max * dt));
    speed = u.v;
    pose = step(pose, u, dt);
    controls.push_back(u);
  }
  return controls;
}

CemResult cross_entropy_optimize(const RobotState& robot, double dt, const ControlSequence& initial_mean,
                                 const CemSettings& settings, const TrajectoryObjective& objective,
                                 const ControlSequence* incumbent) {
  const std::size_t steps = initial_mean.size();
  const auto population = static_cast<std::size_t>(settings.population);
  const auto elites = static_cast<std::size_t>(std::clamp(settings.elites, 1, settings.population));
  const int workers = settings.workers > 0 ? settings.workers : worker_count();

  ControlSequence mean = initial_mean;
  std::vector<Control> spread(steps, Control{settings.std_v, settings.std_omega});

  CemResult result;
  bool have_best = false;
  if (incumbent != nullptr) {
    result.controls = *incumbent;
    clip_controls(result.controls, robot, dt);
    result.breakdown = objective(rollout(robot, result.controls, dt));
    have_best = true;
  }

  std::vector<ControlSequence> candidates(population);
  std::vector<CostBreakdown> scores(population);
  for (int iteration = 0; iteration < settings.iterations; ++iteration) {
    for (std::size_t k = 0; k < population; ++k) {
      ControlSequence& c = candidates[k];
      c = mean;
      if (k > 0) {
        std::mt19937_64 rng(candidate_key(settings.seed, settings.stream, static_cast<std::uint64_t>(iteration), k));
        std::normal_distribution<double> normal;
        for (std::size_t t = 0; t < steps; ++t) {
          c[t].v += spread[t].v * normal(rng);
          c[t].omega += spread[t].omega * normal(rng);
        }
      }
      clip_controls(c, robot, dt);
    }

    parallel_for(population, workers, [&](std::size_t k) { scores[k] = objective(rollout(robot, candidates[k], dt)); });

    for (std::size_t k = 0; k < population; ++k) {
      if (!have_best || scores[k].total < result.breakdown.total) {
        result.controls = candidates[k];
        result.breakdown = scores[k];
        have_best = true;
      }
    }
    result.best_per_iteration.push_back(result.breakdown.total);

    std::vector<std::size_t> order(population);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a].total < scores[b].total; });

    const double count = static_cast<double>(elites);
    for (std::size_t t = 0; t < steps; ++t) {
      Control m{};
      for (std::size_t e = 0; e < elites; ++e) {
        m.v += candidates[order[e]][t].v;
        m.omega += candidates[order[e]][t].omega;
      }
      m.v /= count;
      m.omega /= count;
      Control var{};
      for (std::size_t e = 0; e < elites; ++e) {
        const double dv = candidates[order[e]][t].v - m.v;
        const double dw = candidates[order[e]][t].omega - m.omega;
        var.v += dv * dv;
        var.omega += dw * dw;
      }
      mean[t] = m;
      spread[t] = {std::sqrt(var.v / count), std::sqrt(var.omega / count)};
    }
  }
  return result;
}

namespace {

CemSettings settings_for(const ScenarioSpec& scenario, std::uint64_t seed, std::uint64_t stream) {
  const PlannerParams& p = scenario.planner;
  CemSettings s;
  s.population = p.cem_population;
  s.elites = p.cem_elites;
  s.iterations = p.cem_iterations;
  s.std_v = p.cem_init_std_v.value_or(0.5 * scenario.robot.v_max);
  s.std_omega = p.cem_init_std_omega.value_or(0.5 * scenario.robot.omega_max);
  s.seed = seed;
  s.stream = stream;
  return s;
}

}  // namespace

PlanResult plan_once(const ScenarioSpec& scenario, std::uint64_t seed) {
  if (scenario.goals.empty()) throw ContractViolation("plan_once needs at least one goal");
  const RobotState& robot = scenario.robot;
  const double dt = scenario.planner.dt;
  const int steps = scenario.planner.horizon_w;
  const double v_pref = scenario.task_weights.resolved_v_pref(robot);
  const Goal& target = scenario.target_goal();

  PredictedPathSet predictions;
  CemResult target_result;
  ControlSequence target_seed;
  std::uint64_t target_stream = 0;
  for (std::size_t i = 0; i < scenario.goals.size(); ++i) {
    const Goal& goal = scenario.goals[i];
    const ControlSequence seed_mean = heading_seed(robot, goal.position, v_pref, steps, dt);
    auto objective = [&](const Trajectory& traj) {
      return task_cost(traj, goal.position, scenario.obstacles, robot, scenario.task_weights);
    };
    CemResult r = cross_entropy_optimize(robot, dt, seed_mean, settings_for(scenario, seed, i), objective);
    predictions.insert_or_assign(goal.id, rollout(robot, r.controls, dt));
    if (goal.is_target) {
      target_result = std::move(r);
      target_seed = seed_mean;
      target_stream = i;
    }
  }

  CemResult chosen;
  if (scenario.planner.mode == PlannerMode::kBaseline) {
    chosen = std::move(target_result);
  } else {
    const auto observer = scenario.designated_observer();
    auto objective = [&](const Trajectory& traj) {
      return legibility_aware_cost(traj, target, predictions, scenario.goals, observer, scenario.obstacles, robot,
                                   scenario.task_weights, scenario.legibility);
    };
    // Same sampling stream as the target prediction: with both lambdas at zero
    // this replays that optimization exactly.
    chosen = cross_entropy_optimize(robot, dt, target_seed, settings_for(scenario, seed, target_stream), objective,
                                    &target_result.controls);
  }

  if (chosen.breakdown.collided) {
    throw PlannerFailure("no collision-free candidate found", chosen.breakdown);
  }

  PlanResult out{rollout(robot, chosen.controls, dt), std::move(chosen.controls), chosen.breakdown,
                 std::move(predictions)};
  out.reached = distance(out.trajectory.back(), target.position) <= scenario.planner.goal_tolerance;
  return out;
}

ClosedLoopResult run_closed_loop(const ScenarioSpec& scenario) {
  const Goal& target = scenario.target_goal();
  const double tolerance = scenario.planner.goal_tolerance;
  const double dt = scenario.planner.dt;

  RobotState state = scenario.robot;
  std::vector<Point2> waypoints{state.position};
  std::vector<double> headings{state.heading};
  ControlSequence applied{Control{state.speed, 0.0}};
  std::vector<PlanResult> plans;
  bool reached = false;

  for (int cycle = 0; cycle < scenario.planner.max_cycles; ++cycle) {
    if (distance(state.position, target.position) <= tolerance) {
      reached = true;
      break;
    }
    ScenarioSpec current = scenario;
    current.robot = state;
    PlanResult plan = [&] {
      try {
        return plan_once(current, scenario.seed + static_cast<std::uint64_t>(cycle));
      } catch (const PlannerFailure& failure) {
        throw PlannerFailure(std::string(failure.what()) + " at cycle " + std::to_string(cycle), failure.best(),
                             waypoints);
      }
    }();

    const auto steps = static_cast<std::size_t>(scenario.planner.execute_steps);
    const auto plan_headings = rollout_headings(state, plan.controls, dt);
    for (std::size_t k = 0; k < steps; ++k) {
      waypoints.push_back(plan.trajectory[k + 1]);
      headings.push_back(plan_headings[k + 1]);
      applied.push_back(plan.controls[k]);
    }
    state = advance(state, plan.controls, steps, dt);
    plans.push_back(std::move(plan));
  }
  if (!reached) reached = distance(state.position, target.position) <= tolerance;

  if (waypoints.size() < 2) {
    waypoints.push_back(waypoints.back());
    headings.push_back(headings.back());
    applied.push_back(Control{0.0, 0.0});
  }
  const int cycles = static_cast<int>(plans.size());
  return ClosedLoopResult{std::move(plans), Trajectory(std::move(waypoints), dt), std::move(headings),
                          std::move(applied), cycles, reached};
}

}  // namespace legiplan
