#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "legiplan/observer_eval.hpp"
#include "legiplan/planner.hpp"
#include "legiplan/scenario.hpp"
#include "legiplan/task_cost.hpp"

namespace legiplan {

inline constexpr int kScenarioSchemaVersion = 1;

/// Parses and validates a version-1 scenario document. Unknown keys are
/// rejected; angles are read in degrees. Throws ValidationError.
ScenarioSpec parse_scenario(std::string_view text);
ScenarioSpec load_scenario(const std::string& path);

/// Inverse of parse_scenario. Optional fields that are unset stay omitted.
nlohmann::ordered_json scenario_to_json(const ScenarioSpec& scenario);

nlohmann::ordered_json to_json(const CostBreakdown& breakdown);
nlohmann::ordered_json to_json(const LegibilityReport& report);

/// One TrajectoryLog row.
struct LogRow {
  double t = 0.0;
  Point2 position;
  double heading = 0.0;
  double v = 0.0;
  double omega = 0.0;
  double clearance = 0.0;  ///< footprint-adjusted
};

inline constexpr std::string_view kTrajectoryLogHeader = "t,x,y,heading,v,omega,clearance";

/// Rows for a trajectory whose waypoint i was reached by controls[i]
/// (controls[0] describes the initial state).
std::vector<LogRow> make_log_rows(const Trajectory& traj, std::span<const double> headings,
                                  std::span<const Control> controls, const ScenarioSpec& scenario);

void write_trajectory_log(std::ostream& out, std::span<const LogRow> rows);
std::string format_trajectory_log(std::span<const LogRow> rows);

/// Parses a TrajectoryLog. Throws ValidationError on a bad header, a
/// malformed row or non-increasing time.
std::vector<LogRow> parse_trajectory_log(std::string_view text);

/// Waypoints of a parsed log, with dt taken from the first time step.
Trajectory trajectory_from_log(std::span<const LogRow> rows);

}  // namespace legiplan
