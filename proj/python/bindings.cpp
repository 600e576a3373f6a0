#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "legiplan/errors.hpp"
#include "legiplan/legibility_cost.hpp"
#include "legiplan/observer_eval.hpp"
#include "legiplan/planner.hpp"
#include "legiplan/scenario_io.hpp"
#include "legiplan/svg.hpp"

namespace py = pybind11;
using namespace legiplan;

namespace {

std::vector<std::pair<double, double>> points_of(const Trajectory& t) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : t.waypoints()) out.emplace_back(p.x, p.y);
  return out;
}

Trajectory trajectory_of(const std::vector<std::pair<double, double>>& pts, double dt) {
  std::vector<Point2> q;
  for (const auto& [x, y] : pts) q.push_back({x, y});
  return Trajectory(std::move(q), dt);
}

ObserverState observer_of(std::pair<double, double> position, double heading, double fov) {
  ObserverState o;
  o.position = {position.first, position.second};
  o.heading = heading;
  o.fov = fov;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Legibility-aware local planning";

  auto validation_error = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<PlannerFailure>(m, "PlannerFailure", PyExc_RuntimeError);
  (void)validation_error;

  py::enum_<PlannerMode>(m, "PlannerMode")
      .value("BASELINE", PlannerMode::kBaseline)
      .value("LEGIBLE", PlannerMode::kLegible);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("goal_term", &CostBreakdown::goal_term)
      .def_readonly("clearance_term", &CostBreakdown::clearance_term)
      .def_readonly("approach_term", &CostBreakdown::approach_term)
      .def_readonly("smooth_term", &CostBreakdown::smooth_term)
      .def_readonly("speed_term", &CostBreakdown::speed_term)
      .def_readonly("sim_term", &CostBreakdown::sim_term)
      .def_readonly("fov_term", &CostBreakdown::fov_term)
      .def_readonly("total", &CostBreakdown::total)
      .def_readonly("collided", &CostBreakdown::collided)
      .def("to_json", [](const CostBreakdown& b) { return to_json(b).dump(); });

  py::class_<ScenarioSpec>(m, "Scenario")
      .def_property("seed", [](const ScenarioSpec& s) { return s.seed; },
                    [](ScenarioSpec& s, std::uint64_t v) { s.seed = v; })
      .def_property("mode", [](const ScenarioSpec& s) { return s.planner.mode; },
                    [](ScenarioSpec& s, PlannerMode v) { s.planner.mode = v; })
      .def_property("lambda_sim", [](const ScenarioSpec& s) { return s.legibility.lambda_sim; },
                    [](ScenarioSpec& s, double v) { s.legibility.lambda_sim = v; })
      .def_property("lambda_fov", [](const ScenarioSpec& s) { return s.legibility.lambda_fov; },
                    [](ScenarioSpec& s, double v) { s.legibility.lambda_fov = v; })
      .def_property_readonly("target", [](const ScenarioSpec& s) { return s.target_goal().id; })
      .def_property_readonly("goal_ids",
                             [](const ScenarioSpec& s) {
                               std::vector<std::string> ids;
                               for (const auto& g : s.goals) ids.push_back(g.id);
                               return ids;
                             })
      .def("to_json", [](const ScenarioSpec& s) { return scenario_to_json(s).dump(2); });

  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"));
  m.def("load_scenario", &load_scenario, py::arg("path"));

  m.def(
      "plan_once",
      [](const ScenarioSpec& s, std::optional<std::uint64_t> seed) {
        const PlanResult r = plan_once(s, seed.value_or(s.seed));
        py::dict out;
        out["waypoints"] = points_of(r.trajectory);
        out["breakdown"] = r.breakdown;
        py::dict preds;
        for (const auto& [id, t] : r.predictions) preds[py::str(id)] = points_of(t);
        out["predictions"] = preds;
        return out;
      },
      py::arg("scenario"), py::arg("seed") = py::none());

  m.def(
      "run_closed_loop",
      [](const ScenarioSpec& s) {
        const ClosedLoopResult r = run_closed_loop(s);
        py::dict out;
        out["waypoints"] = points_of(r.executed);
        out["headings"] = r.headings;
        out["cycles_used"] = r.cycles_used;
        out["reached"] = r.reached;
        out["log_csv"] = format_trajectory_log(make_log_rows(r.executed, r.headings, r.applied, s));
        return out;
      },
      py::arg("scenario"));

  m.def(
      "evaluate",
      [](const std::vector<std::pair<double, double>>& waypoints, double dt, const ScenarioSpec& s, double beta,
         std::vector<double> fractions, bool mask_fov) {
        EvaluationOptions opts;
        opts.fractions = std::move(fractions);
        opts.mask_fov = mask_fov;
        const LegibilityReport r = evaluate_trajectory(trajectory_of(waypoints, dt), s, PosteriorModel{beta, {}}, opts);
        py::dict out;
        out["score"] = r.score;
        out["correctness"] = r.correctness;
        out["posteriors"] = r.posteriors;
        return out;
      },
      py::arg("waypoints"), py::arg("dt"), py::arg("scenario"), py::arg("beta") = 1.0,
      py::arg("fractions") = kDefaultFractions, py::arg("mask_fov") = false);

  m.def(
      "legibility_score", [](const std::vector<double>& c) { return legibility_score(c); }, py::arg("correctness"));

  m.def(
      "theta_dev",
      [](std::pair<double, double> q, std::pair<double, double> observer, double heading, double fov) {
        return theta_dev({q.first, q.second}, observer_of(observer, heading, fov));
      },
      py::arg("q"), py::arg("observer"), py::arg("heading"), py::arg("fov") = kDefaultFov);

  m.def(
      "visibility",
      [](std::pair<double, double> q, std::pair<double, double> observer, double heading, double fov) {
        return visibility({q.first, q.second}, observer_of(observer, heading, fov));
      },
      py::arg("q"), py::arg("observer"), py::arg("heading"), py::arg("fov") = kDefaultFov);

  m.def(
      "fov_cost",
      [](const std::vector<std::pair<double, double>>& waypoints, std::pair<double, double> observer, double heading,
         double fov) { return fov_cost(trajectory_of(waypoints, 1.0), observer_of(observer, heading, fov)); },
      py::arg("waypoints"), py::arg("observer"), py::arg("heading"), py::arg("fov") = kDefaultFov);

  m.def(
      "render_svg",
      [](const ScenarioSpec& s, const std::vector<std::pair<double, double>>& legible,
         const std::vector<std::pair<double, double>>& baseline) {
        std::vector<LabeledTrajectory> trajs;
        if (legible.size() >= 2) trajs.push_back({"legible", trajectory_of(legible, s.planner.dt), TrajectoryStyle::kLegible});
        if (baseline.size() >= 2)
          trajs.push_back({"baseline", trajectory_of(baseline, s.planner.dt), TrajectoryStyle::kBaseline});
        return render_svg(s, trajs);
      },
      py::arg("scenario"), py::arg("legible") = std::vector<std::pair<double, double>>{},
      py::arg("baseline") = std::vector<std::pair<double, double>>{});
}
