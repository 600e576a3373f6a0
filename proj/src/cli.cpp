#include "legiplan/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "legiplan/errors.hpp"
#include "legiplan/observer_eval.hpp"
#include "legiplan/planner.hpp"
#include "legiplan/scenario_io.hpp"
#include "legiplan/svg.hpp"

namespace legiplan {

namespace {

using nlohmann::ordered_json;

struct CommonArgs {
  std::string scenario_path;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  std::optional<std::string> svg_path;
};

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("", "cannot write output file", path);
  out << contents;
  if (!out) throw ValidationError("", "failed writing output file", path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("", "cannot read file", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ScenarioSpec load(const CommonArgs& args) {
  ScenarioSpec scenario = load_scenario(args.scenario_path);
  if (args.mode) scenario.planner.mode = parse_mode(*args.mode);
  if (args.seed) scenario.seed = *args.seed;
  return scenario;
}

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    char* end = nullptr;
    const double f = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size() || !(f > 0.0 && f <= 1.0)) {
      throw ValidationError("--fractions", "fractions must be comma-separated values in (0, 1]", cell);
    }
    out.push_back(f);
  }
  if (out.empty()) throw ValidationError("--fractions", "at least one fraction");
  return out;
}

std::vector<LogRow> plan_rows(const PlanResult& plan, const ScenarioSpec& scenario) {
  ControlSequence controls{Control{scenario.robot.speed, 0.0}};
  controls.insert(controls.end(), plan.controls.begin(), plan.controls.end());
  const auto headings = rollout_headings(scenario.robot, plan.controls, scenario.planner.dt);
  return make_log_rows(plan.trajectory, headings, controls, scenario);
}

std::vector<LogRow> executed_rows(const ClosedLoopResult& run, const ScenarioSpec& scenario) {
  return make_log_rows(run.executed, run.headings, run.applied, scenario);
}

double min_margin(std::span<const LogRow> rows) {
  double lowest = kNoObstacleClearance;
  for (const auto& row : rows) lowest = std::min(lowest, row.clearance);
  return lowest;
}

TrajectoryStyle style_for(PlannerMode mode) {
  return mode == PlannerMode::kLegible ? TrajectoryStyle::kLegible : TrajectoryStyle::kBaseline;
}

int run_plan(const CommonArgs& args, std::ostream& out) {
  const ScenarioSpec scenario = load(args);
  const PlanResult plan = plan_once(scenario, scenario.seed);
  if (args.out_path) write_file(*args.out_path, format_trajectory_log(plan_rows(plan, scenario)));
  if (args.svg_path) {
    write_file(*args.svg_path,
               render_svg(scenario, {{to_string(scenario.planner.mode), plan.trajectory, style_for(scenario.planner.mode)}},
                          plan.predictions));
  }
  out << to_json(plan.breakdown).dump(2) << '\n';
  return kExitOk;
}

int run_simulate(const CommonArgs& args, std::ostream& out) {
  const ScenarioSpec scenario = load(args);
  const ClosedLoopResult run = run_closed_loop(scenario);
  const auto rows = executed_rows(run, scenario);
  write_file(*args.out_path, format_trajectory_log(rows));
  if (args.svg_path) {
    write_file(*args.svg_path,
               render_svg(scenario, {{to_string(scenario.planner.mode), run.executed, style_for(scenario.planner.mode)}}));
  }
  ordered_json summary = {{"mode", to_string(scenario.planner.mode)},
                          {"seed", scenario.seed},
                          {"reached", run.reached},
                          {"cycles_used", run.cycles_used},
                          {"waypoints", run.executed.size()},
                          {"min_clearance", min_margin(rows)}};
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int run_evaluate(const CommonArgs& args, const std::string& trajectory_path, double beta,
                 const std::string& fractions, bool mask_fov, std::ostream& out) {
  const ScenarioSpec scenario = load(args);
  const auto rows = parse_trajectory_log(read_file(trajectory_path));
  PosteriorModel model;
  model.beta = beta;
  EvaluationOptions options;
  options.fractions = parse_fractions(fractions);
  options.mask_fov = mask_fov;
  const LegibilityReport report = evaluate_trajectory(trajectory_from_log(rows), scenario, model, options);
  out << to_json(report).dump(2) << '\n';
  return kExitOk;
}

int run_compare(const CommonArgs& args, double beta, std::ostream& out) {
  ScenarioSpec baseline = load(args);
  baseline.planner.mode = PlannerMode::kBaseline;
  ScenarioSpec legible = baseline;
  legible.planner.mode = PlannerMode::kLegible;

  const ClosedLoopResult base_run = run_closed_loop(baseline);
  const ClosedLoopResult leg_run = run_closed_loop(legible);
  PosteriorModel model;
  model.beta = beta;
  const LegibilityReport base_report = evaluate_trajectory(base_run.executed, baseline, model);
  const LegibilityReport leg_report = evaluate_trajectory(leg_run.executed, legible, model);

  ordered_json partials = ordered_json::array();
  for (std::size_t k = 0; k < base_report.correctness.size(); ++k) {
    partials.push_back({{"fraction", base_report.partial_fractions[k]},
                        {"c_baseline", base_report.correctness[k]},
                        {"c_legible", leg_report.correctness[k]},
                        {"delta", leg_report.correctness[k] - base_report.correctness[k]}});
  }
  auto run_summary = [](const ClosedLoopResult& run) {
    return ordered_json{{"reached", run.reached}, {"cycles_used", run.cycles_used}, {"waypoints", run.executed.size()}};
  };
  ordered_json report = {{"seed", baseline.seed},
                         {"beta", beta},
                         {"L_baseline", base_report.score},
                         {"L_legible", leg_report.score},
                         {"delta_L", leg_report.score - base_report.score},
                         {"partials", std::move(partials)},
                         {"baseline", run_summary(base_run)},
                         {"legible", run_summary(leg_run)}};

  if (args.svg_path) {
    std::optional<PredictedPathSet> predictions;
    if (!leg_run.plans.empty()) predictions = leg_run.plans.front().predictions;
    write_file(*args.svg_path, render_svg(legible,
                                          {{"baseline", base_run.executed, TrajectoryStyle::kBaseline},
                                           {"legible", leg_run.executed, TrajectoryStyle::kLegible}},
                                          predictions));
  }
  out << report.dump(2) << '\n';
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_mode, bool with_seed) {
  cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file")->required();
  if (with_mode) cmd->add_option("--mode", args.mode, "baseline or legible (default: scenario planner.mode)");
  if (with_seed) cmd->add_option("--seed", args.seed, "Random seed (default: scenario seed)");
}

void report_error(std::ostream& err, const char* kind, const std::string& message, ordered_json extra = {}) {
  ordered_json j = {{"error", kind}, {"message", message}};
  for (auto& [key, value] : extra.items()) j[key] = value;
  err << j.dump() << '\n';
}

}  // namespace

int cli_main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Legibility-aware local planning and synthetic-observer evaluation", "legiplan"};
  app.require_subcommand(1);

  CommonArgs args;
  double beta = 1.0;
  std::string fractions = "0.25,0.5,0.75";
  std::string trajectory_path;
  bool mask_fov = false;

  auto* plan = app.add_subcommand("plan", "Run one planning cycle and print its cost breakdown");
  add_common(plan, args, true, true);
  plan->add_option("--out", args.out_path, "Write the planned trajectory as CSV");
  plan->add_option("--svg", args.svg_path, "Write an SVG figure");

  auto* simulate = app.add_subcommand("simulate", "Run the closed-loop simulation");
  add_common(simulate, args, true, true);
  simulate->add_option("--out", args.out_path, "Executed trajectory CSV")->required();
  simulate->add_option("--svg", args.svg_path, "Write an SVG figure");

  auto* evaluate = app.add_subcommand("evaluate", "Score a trajectory with the synthetic observer");
  add_common(evaluate, args, false, false);
  evaluate->add_option("--trajectory", trajectory_path, "Trajectory CSV")->required();
  evaluate->add_option("--beta", beta, "Observer rationality")->check(CLI::NonNegativeNumber);
  evaluate->add_option("--fractions", fractions, "Partial fractions, comma separated");
  evaluate->add_flag("--mask-fov", mask_fov, "Only count what the designated observer can see");

  auto* compare = app.add_subcommand("compare", "Run both planners and compare legibility");
  add_common(compare, args, false, true);
  compare->add_option("--svg", args.svg_path, "Write an SVG figure with both executed paths");
  compare->add_option("--beta", beta, "Observer rationality")->check(CLI::NonNegativeNumber);

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitValidation;
  }

  try {
    if (plan->parsed()) return run_plan(args, out);
    if (simulate->parsed()) return run_simulate(args, out);
    if (evaluate->parsed()) return run_evaluate(args, trajectory_path, beta, fractions, mask_fov, out);
    return run_compare(args, beta, out);
  } catch (const ValidationError& e) {
    report_error(err, "validation", e.what(), {{"path", e.path()}, {"rule", e.rule()}});
    return kExitValidation;
  } catch (const PlannerFailure& e) {
    ordered_json partial = ordered_json::array();
    for (const auto& p : e.partial_path()) partial.push_back({p.x, p.y});
    report_error(err, "planner_failure", e.what(), {{"best", to_json(e.best())}, {"partial_path", partial}});
    return kExitPlannerFailure;
  } catch (const std::invalid_argument& e) {
    report_error(err, "validation", e.what());
    return kExitValidation;
  } catch (const std::domain_error& e) {
    report_error(err, "validation", e.what());
    return kExitValidation;
  }
}

}  // namespace legiplan
