#pragma once

#include <optional>
#include <string>
#include <vector>

#include "legiplan/legibility_cost.hpp"
#include "legiplan/scenario.hpp"

namespace legiplan {

enum class TrajectoryStyle { kLegible, kBaseline, kOther };

struct LabeledTrajectory {
  std::string label;
  Trajectory trajectory;
  TrajectoryStyle style = TrajectoryStyle::kOther;
};

inline constexpr const char* kLegibleColor = "#006400";
inline constexpr const char* kBaselineColor = "#90ee90";
inline constexpr const char* kTargetPredictionColor = "#d62728";
inline constexpr const char* kOtherPredictionColor = "#2ca02c";
inline constexpr const char* kFovColor = "#00bcd4";
inline constexpr const char* kObstacleColor = "#808080";

/// Top-down scene drawing. The view box covers the scenario (robot, goals,
/// observers, obstacles) plus a 1 m margin; output bytes depend only on the inputs.
std::string render_svg(const ScenarioSpec& scenario, const std::vector<LabeledTrajectory>& trajectories,
                       const std::optional<PredictedPathSet>& predictions = std::nullopt);

}  // namespace legiplan
