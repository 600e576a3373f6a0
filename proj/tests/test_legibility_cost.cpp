#include <numbers>
#include <random>

#include "doctest.h"
#include "legiplan/errors.hpp"
#include "legiplan/legibility_cost.hpp"
#include "legiplan/task_cost.hpp"
#include "oracles.hpp"

using namespace legiplan;

namespace {

constexpr double kPi = std::numbers::pi;

double deg(double d) { return d * kPi / 180.0; }

ObserverState observer_at(Point2 p, double heading, double fov = kDefaultFov) {
  ObserverState o;
  o.id = "O";
  o.position = p;
  o.heading = heading;
  o.fov = fov;
  return o;
}

Trajectory line(Point2 start, Vec2 step, int n, double dt = 1.0) {
  std::vector<Point2> q;
  for (int i = 0; i < n; ++i) q.push_back(start + step * static_cast<double>(i));
  return Trajectory(q, dt);
}

struct TwoGoalFixture {
  Trajectory candidate = line({1, 0}, {1, 0}, 6);
  std::vector<Goal> goals{{"G1", {6, 0}, true}, {"G2", {1, 5}, false}};
  PredictedPathSet predictions{{"G1", line({1, 0}, {1, 0}, 6)}, {"G2", line({1, 0}, {0, 1}, 6)}};
};

std::vector<Point2> random_points(std::mt19937_64& rng, int n, double spread) {
  std::uniform_real_distribution<double> c(-spread, spread);
  std::vector<Point2> q;
  for (int i = 0; i < n; ++i) q.push_back({c(rng), c(rng)});
  return q;
}

}  // namespace

TEST_SUITE("legibility-cost") {

TEST_CASE("theta_dev examples") {
  const ObserverState o = observer_at({0, 0}, 0.0);
  CHECK(theta_dev({1, 0}, o) == doctest::Approx(0.0));
  CHECK(theta_dev({0, 1}, o) == doctest::Approx(kPi / 2));
  CHECK(theta_dev({-1, 0}, o) == doctest::Approx(kPi));
  CHECK(theta_dev({-1, -1}, o) == doctest::Approx(2.356194490192345));
  CHECK(theta_dev({0, 0}, o) == 0.0);
}

TEST_CASE("visibility includes the wedge boundary") {
  const ObserverState o = observer_at({0, 0}, 0.0, deg(120));
  CHECK(visibility({1, 0}, o));
  CHECK(visibility({std::cos(deg(60)), std::sin(deg(60))}, o));
  CHECK(visibility({std::cos(deg(-60)), std::sin(deg(-60))}, o));
  CHECK_FALSE(visibility({std::cos(deg(61)), std::sin(deg(61))}, o));
  CHECK_FALSE(visibility({-1, 0}, o));
  const ObserverState full = observer_at({0, 0}, 1.0, 2 * kPi);
  CHECK(visibility({-3, 0.001}, full));
}

TEST_CASE("h_weight examples") {
  CHECK(h_weight({0, 0}, {3, 0}, {0, 4}, 3.0) == doctest::Approx(0.75));
  CHECK(h_weight({0, 0}, {3, 0}, {3, 0}, 3.0) == 1.0);
  CHECK(h_weight({0, 4}, {3, 0}, {0, 4}, 3.0) == 3.0);
  CHECK(h_weight({3, 0}, {3, 0}, {0, 4}, 3.0) == 0.0);
  CHECK(h_weight({0, 0}, {30, 0}, {0, 1}, 3.0) == 3.0);
}

TEST_CASE("velocity_cosine guards small velocities") {
  CHECK(velocity_cosine({1, 0}, {0, 2}, 1e-6) == doctest::Approx(0.0));
  CHECK(velocity_cosine({1, 1}, {2, 2}, 1e-6) == doctest::Approx(1.0));
  CHECK(velocity_cosine({1e-9, 0}, {1, 0}, 1e-6) == 0.0);
}

TEST_CASE("fov_cost along the wedge edge is w+1 times tanh(1)") {
  const TwoGoalFixture f;
  const ObserverState o = observer_at({0, 0}, deg(-60), deg(120));
  CHECK(fov_cost(f.candidate, o) == doctest::Approx(4.569564935734589).epsilon(1e-12));
  const Trajectory single({{1, 0}, {1, 0}}, 1.0);
  CHECK(fov_cost(single, o) == doctest::Approx(2 * 0.7615941559557649).epsilon(1e-12));
}

TEST_CASE("weighted similarity and sim_cost examples") {
  const TwoGoalFixture f;
  const LegibilityParams params;
  const std::optional<ObserverState> none;
  CHECK(weighted_similarity(f.candidate, f.predictions.at("G1"), f.goals[0], {6, 0}, none, params) ==
        doctest::Approx(6.0));
  CHECK(weighted_similarity(f.candidate, f.predictions.at("G2"), f.goals[1], {6, 0}, none, params) ==
        doctest::Approx(0.0));
  CHECK(sim_cost(f.candidate, f.predictions, f.goals, none, params) == doctest::Approx(-6.0));

  SUBCASE("moving along the unintended prediction cancels") {
    const Trajectory diag = line({1, 0}, {1, 1}, 6);
    PredictedPathSet preds{{"G1", line({1, 0}, {1, 0}, 6)}, {"G2", line({1, 0}, {0, 1}, 6)}};
    const std::vector<Goal> goals{{"G1", {6, 0}, true}, {"G2", {6, 0}, false}};
    // G2 placed on G* makes h = 1 for both, and the diagonal is equally close to either prediction.
    CHECK(sim_cost(diag, preds, goals, none, params) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("single goal leaves an empty unintended set") {
    const std::vector<Goal> goals{{"G1", {6, 0}, true}};
    const PredictedPathSet preds{{"G1", f.candidate}};
    CHECK(sim_cost(f.candidate, preds, goals, none, params) == doctest::Approx(-6.0));
  }

  SUBCASE("missing prediction is a contract violation") {
    const PredictedPathSet preds{{"G1", f.candidate}};
    CHECK_THROWS_AS(sim_cost(f.candidate, preds, f.goals, none, params), ContractViolation);
  }

  SUBCASE("mismatched lengths are a contract violation") {
    CHECK_THROWS_AS(weighted_similarity(f.candidate, line({1, 0}, {1, 0}, 4), f.goals[0], {6, 0}, none, params),
                    ContractViolation);
  }

  SUBCASE("invisible waypoints do not count") {
    const ObserverState behind = observer_at({0, 0}, kPi, deg(90));
    CHECK(weighted_similarity(f.candidate, f.predictions.at("G1"), f.goals[0], {6, 0}, behind, params) == 0.0);
  }
}

TEST_CASE("combined legibility-aware cost example") {
  const TwoGoalFixture f;
  const ObserverState o = observer_at({0, 0}, deg(-60), deg(120));
  TaskCostWeights tw;
  tw.w_goal = 0.4;
  tw.v_pref = 1.0;
  RobotState robot;
  robot.position = {1, 0};
  const LegibilityParams params;
  const CostBreakdown b =
      legibility_aware_cost(f.candidate, f.goals[0], f.predictions, f.goals, o, {}, robot, tw, params);
  CHECK(b.sim_term == doctest::Approx(-6.0));
  CHECK(b.fov_term == doctest::Approx(4.569564935734589));
  CHECK(b.total == doctest::Approx(-0.4304350642654109).epsilon(1e-12));

  const CostBreakdown no_observer =
      legibility_aware_cost(f.candidate, f.goals[0], f.predictions, f.goals, std::nullopt, {}, robot, tw, params);
  CHECK(no_observer.fov_term == 0.0);
  CHECK(no_observer.total == doctest::Approx(1.0 - 6.0));
}

TEST_CASE("theta_dev and visibility agree with the atan2 oracle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> c(-10, 10), h(-kPi, kPi), fov(0.05, 2 * kPi);
  for (int i = 0; i < 10000; ++i) {
    const ObserverState o = observer_at({c(rng), c(rng)}, h(rng), fov(rng));
    const Point2 q{c(rng), c(rng)};
    REQUIRE(theta_dev(q, o) == doctest::Approx(oracle::theta_dev(q, o)).epsilon(1e-9));
    const double margin = std::abs(oracle::theta_dev(q, o) - o.fov / 2);
    if (margin > 1e-9) REQUIRE(visibility(q, o) == oracle::visibility(q, o));
  }
}

TEST_CASE("cost bounds on random trajectories") {
  std::mt19937_64 rng(5);
  // Below roughly 19 degrees tanh saturates to exactly 1 in double precision.
  std::uniform_real_distribution<double> h(-kPi, kPi), fov(kPi / 6, 2 * kPi);
  const LegibilityParams params;
  for (int i = 0; i < 2000; ++i) {
    const int n = 2 + static_cast<int>(rng() % 14);
    const Trajectory cand(random_points(rng, n, 5), 0.4);
    const auto goals_pts = random_points(rng, 3, 8);
    const std::vector<Goal> goals{{"A", goals_pts[0], true}, {"B", goals_pts[1], false}, {"C", goals_pts[2], false}};
    PredictedPathSet preds;
    for (const auto& g : goals) preds.emplace(g.id, Trajectory(random_points(rng, n, 5), 0.4));
    const ObserverState o = observer_at(random_points(rng, 1, 5)[0], h(rng), fov(rng));

    const double f = fov_cost(cand, o);
    REQUIRE(f >= 0.0);
    REQUIRE(f < n);
    const double bound = (goals.size() - 1) * params.h_max * n + n;
    const double s = sim_cost(cand, preds, goals, o, params);
    REQUIRE(std::abs(s) <= bound + 1e-9);
    for (const auto& g : goals) {
      const double self = weighted_similarity(preds.at(g.id), preds.at(g.id), g, goals[0].position, o, params);
      REQUIRE(self >= 0.0);
    }
  }
}

TEST_CASE("uniform scaling leaves the legibility terms unchanged") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> scale(0.2, 5), h(-kPi, kPi);
  const LegibilityParams params;
  for (int i = 0; i < 500; ++i) {
    const double s = scale(rng);
    auto scaled = [s](const std::vector<Point2>& pts) {
      std::vector<Point2> out;
      for (const auto& p : pts) out.push_back(p * s);
      return out;
    };
    const auto c = random_points(rng, 8, 4);
    const auto p1 = random_points(rng, 8, 4);
    const auto p2 = random_points(rng, 8, 4);
    const auto gp = random_points(rng, 2, 6);
    const Point2 op = random_points(rng, 1, 4)[0];
    const double heading = h(rng);

    const std::vector<Goal> g{{"A", gp[0], true}, {"B", gp[1], false}};
    const std::vector<Goal> gs{{"A", gp[0] * s, true}, {"B", gp[1] * s, false}};
    const PredictedPathSet pr{{"A", Trajectory(p1, 0.4)}, {"B", Trajectory(p2, 0.4)}};
    const PredictedPathSet prs{{"A", Trajectory(scaled(p1), 0.4)}, {"B", Trajectory(scaled(p2), 0.4)}};
    const ObserverState o = observer_at(op, heading);
    const ObserverState os = observer_at(op * s, heading);

    REQUIRE(fov_cost(Trajectory(scaled(c), 0.4), os) == doctest::Approx(fov_cost(Trajectory(c, 0.4), o)).epsilon(1e-9));
    REQUIRE(sim_cost(Trajectory(scaled(c), 0.4), prs, gs, os, params) ==
            doctest::Approx(sim_cost(Trajectory(c, 0.4), pr, g, o, params)).epsilon(1e-9));
  }
}

TEST_CASE("widening the field of view never raises the FOV cost") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> h(-kPi, kPi), fov(0.05, 2 * kPi);
  for (int i = 0; i < 2000; ++i) {
    const Trajectory cand(random_points(rng, 6, 5), 0.4);
    const Point2 op = random_points(rng, 1, 5)[0];
    const double heading = h(rng);
    double a = fov(rng), b = fov(rng);
    if (a > b) std::swap(a, b);
    REQUIRE(fov_cost(cand, observer_at(op, heading, b)) <= fov_cost(cand, observer_at(op, heading, a)) + 1e-12);
  }
}

TEST_CASE("with both lambdas zero the ranking matches the task cost") {
  std::mt19937_64 rng(3);
  LegibilityParams zero;
  zero.lambda_sim = 0.0;
  zero.lambda_fov = 0.0;
  const std::vector<Goal> goals{{"A", {4, 1}, true}, {"B", {4, -1}, false}};
  const std::vector<Obstacle> obstacles{Circle{{2, 0}, 0.4}};
  const ObserverState o = observer_at({5, 0}, kPi);
  RobotState robot;
  const TaskCostWeights tw;
  for (int trial = 0; trial < 200; ++trial) {
    PredictedPathSet preds{{"A", Trajectory(random_points(rng, 6, 3), 0.4)},
                           {"B", Trajectory(random_points(rng, 6, 3), 0.4)}};
    std::vector<Trajectory> cands;
    for (int k = 0; k < 10; ++k) cands.emplace_back(random_points(rng, 6, 3), 0.4);
    std::size_t best_task = 0, best_la = 0;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const double t = task_cost(cands[k], goals[0].position, obstacles, robot, tw).total;
      const double l =
          legibility_aware_cost(cands[k], goals[0], preds, goals, o, obstacles, robot, tw, zero).total;
      REQUIRE(t == l);
      if (t < task_cost(cands[best_task], goals[0].position, obstacles, robot, tw).total) best_task = k;
      if (l < legibility_aware_cost(cands[best_la], goals[0], preds, goals, o, obstacles, robot, tw, zero).total)
        best_la = k;
    }
    REQUIRE(best_task == best_la);
  }
}

}
