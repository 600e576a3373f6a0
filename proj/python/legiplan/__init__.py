"""Legibility-aware local planning for mobile robots."""

from ._core import (
    CostBreakdown,
    PlannerFailure,
    PlannerMode,
    Scenario,
    ValidationError,
    evaluate,
    fov_cost,
    legibility_score,
    load_scenario,
    parse_scenario,
    plan_once,
    render_svg,
    run_closed_loop,
    theta_dev,
    visibility,
)

__all__ = [
    "CostBreakdown",
    "PlannerFailure",
    "PlannerMode",
    "Scenario",
    "ValidationError",
    "evaluate",
    "fov_cost",
    "legibility_score",
    "load_scenario",
    "parse_scenario",
    "plan_once",
    "render_svg",
    "run_closed_loop",
    "theta_dev",
    "visibility",
]
