#include <random>

#include "doctest.h"
#include "legiplan/task_cost.hpp"

using namespace legiplan;

namespace {

RobotState unit_robot() {
  RobotState r;
  r.radius = 0.2;
  r.v_max = 1.25;
  return r;
}

TaskCostWeights unit_weights() {
  TaskCostWeights w;
  w.w_goal = w.w_clearance = w.w_approach = w.w_smooth = w.w_speed = 1.0;
  w.v_pref = 1.0;
  return w;
}

Point2 rotate(Point2 p, Point2 pivot, double angle) {
  const Vec2 d = p - pivot;
  return pivot + Point2{d.x * std::cos(angle) - d.y * std::sin(angle), d.x * std::sin(angle) + d.y * std::cos(angle)};
}

Obstacle transform(const Obstacle& o, const auto& f) {
  const auto& c = std::get<Circle>(o);
  return Circle{f(c.center), c.radius};
}

}  // namespace

TEST_SUITE("task-cost") {

TEST_CASE("three-waypoint example") {
  const Trajectory traj({{0, 0}, {1, 0}, {2, 0}}, 1.0);
  const CostBreakdown b = task_cost(traj, {2, 0}, {}, unit_robot(), unit_weights());
  CHECK(b.goal_term == doctest::Approx(1.0));
  CHECK(b.smooth_term == 0.0);
  CHECK(b.speed_term == 0.0);
  CHECK(b.clearance_term == 0.0);
  CHECK(b.approach_term == 0.0);
  CHECK(b.total == doctest::Approx(1.0));
  CHECK_FALSE(b.collided);
}

TEST_CASE("straight path at preferred speed pays only goal progress") {
  const Trajectory traj({{0, 0}, {0.5, 0}, {1.0, 0}, {1.5, 0}, {2.0, 0}}, 0.5);
  TaskCostWeights w;
  w.v_pref = 1.0;
  const CostBreakdown b = task_cost(traj, {2, 0}, {}, unit_robot(), w);
  CHECK(b.smooth_term == 0.0);
  CHECK(b.speed_term == doctest::Approx(0.0));
  CHECK(b.clearance_term == 0.0);
  CHECK(b.approach_term == 0.0);
  CHECK(b.total == doctest::Approx(w.w_goal * b.goal_term));
}

TEST_CASE("waypoint inside an obstacle hits the collision sentinel") {
  const Trajectory traj({{0, 0}, {1, 0}, {2, 0}}, 1.0);
  const std::vector<Obstacle> obstacles{Circle{{1, 0.1}, 0.3}};
  const CostBreakdown b = task_cost(traj, {2, 0}, obstacles, unit_robot(), unit_weights());
  CHECK(b.collided);
  CHECK(b.total == kCollisionCost);
}

TEST_CASE("clearance and approach terms follow their definitions") {
  const Trajectory traj({{0, 1.0}, {0, 0.8}, {0, 0.6}}, 1.0);
  const std::vector<Obstacle> obstacles{Circle{{0, 0}, 0.1}};
  TaskCostWeights w = unit_weights();
  w.d_safe = 0.5;
  const CostBreakdown b = task_cost(traj, {0, 1.0}, obstacles, unit_robot(), w);
  // c_t = |q_t| - 0.1 - 0.2 = 0.7, 0.5, 0.3
  const double expected_clr = std::pow((0.5 - 0.3) / 0.5, 2);
  const double expected_app = (0.2 + 0.2) / 0.5;
  CHECK(b.clearance_term == doctest::Approx(expected_clr));
  CHECK(b.approach_term == doctest::Approx(expected_app));
}

TEST_CASE("smoothness is squared acceleration") {
  const Trajectory traj({{0, 0}, {1, 0}, {1, 1}}, 0.5);
  const CostBreakdown b = task_cost(traj, {1, 1}, {}, unit_robot(), unit_weights());
  // q2 - 2 q1 + q0 = (-1, 1) -> 2 / 0.5^4
  CHECK(b.smooth_term == doctest::Approx(2.0 / 0.0625));
}

TEST_CASE("total is the weighted sum of the terms") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> coord(-3, 3), weight(0, 3);
  const std::vector<Obstacle> obstacles{Circle{{10, 10}, 0.5}, Rect{{-10, -10}, {-9, -9}}};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point2> q;
    for (int i = 0; i < 8; ++i) q.push_back({coord(rng), coord(rng)});
    TaskCostWeights w{weight(rng), weight(rng), weight(rng), weight(rng), weight(rng), 0.5, 0.9};
    const CostBreakdown b = task_cost(Trajectory(q, 0.4), {1, 1}, obstacles, unit_robot(), w);
    REQUIRE_FALSE(b.collided);
    const double sum = w.w_goal * b.goal_term + w.w_clearance * b.clearance_term + w.w_approach * b.approach_term +
                       w.w_smooth * b.smooth_term + w.w_speed * b.speed_term;
    REQUIRE(b.total == doctest::Approx(sum).epsilon(1e-9));
  }
}

TEST_CASE("translation and rotation invariance") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coord(-3, 3), angle(-3.1, 3.1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Point2> q;
    for (int i = 0; i < 10; ++i) q.push_back({coord(rng), coord(rng)});
    const Point2 goal{coord(rng), coord(rng)};
    const std::vector<Obstacle> obstacles{Circle{{coord(rng) + 8, coord(rng)}, 0.6}, Circle{{coord(rng), 9}, 0.4}};
    const double base = task_cost(Trajectory(q, 0.4), goal, obstacles, unit_robot(), unit_weights()).total;

    const Point2 shift{coord(rng), coord(rng)};
    const Point2 pivot{coord(rng), coord(rng)};
    const double theta = angle(rng);
    auto moved = [&](Point2 p) { return rotate(p + shift, pivot, theta); };
    std::vector<Point2> q2;
    for (const auto& p : q) q2.push_back(moved(p));
    std::vector<Obstacle> o2;
    for (const auto& o : obstacles) o2.push_back(transform(o, moved));
    const double other = task_cost(Trajectory(q2, 0.4), moved(goal), o2, unit_robot(), unit_weights()).total;
    REQUIRE(other == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("inflating obstacles never lowers the clearance penalty") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coord(-2, 2), grow(0, 0.3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Point2> q;
    for (int i = 0; i < 6; ++i) q.push_back({coord(rng), coord(rng) + 4});
    std::vector<Obstacle> small{Circle{{coord(rng), 0}, 0.5}, Circle{{coord(rng), 1}, 0.5}};
    std::vector<Obstacle> big = small;
    const double extra = grow(rng);
    for (auto& o : big) std::get<Circle>(o).radius += extra;
    const Trajectory traj(q, 0.4);
    const double before = task_cost(traj, {0, 4}, small, unit_robot(), unit_weights()).clearance_term;
    const double after = task_cost(traj, {0, 4}, big, unit_robot(), unit_weights()).clearance_term;
    REQUIRE(after >= before);
  }
}

TEST_CASE("collided trajectories cost more than any collision-free one") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-4, 4);
  const std::vector<Obstacle> obstacles{Circle{{0, 0}, 1.0}};
  double worst_free = -1e300;
  double best_hit = 1e300;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Point2> q;
    for (int i = 0; i < 6; ++i) q.push_back({coord(rng), coord(rng)});
    const CostBreakdown b = task_cost(Trajectory(q, 0.4), {3, 3}, obstacles, unit_robot(), unit_weights());
    (b.collided ? best_hit : worst_free) = b.collided ? std::min(best_hit, b.total) : std::max(worst_free, b.total);
  }
  CHECK(worst_free < best_hit);
}

}
