import math
import os
from pathlib import Path

import pytest

import legiplan

SCENARIOS = Path(os.environ.get("LEGIPLAN_SCENARIO_DIR", Path(__file__).resolve().parents[2] / "scenarios"))


def fig1():
    return legiplan.load_scenario(str(SCENARIOS / "fig1_two_goals.json"))


def test_score_example():
    assert legiplan.legibility_score([1, 1, 0]) == pytest.approx(9 / 11, abs=1e-12)


def test_geometry():
    assert legiplan.theta_dev((-1, -1), (0, 0), 0.0) == pytest.approx(3 * math.pi / 4)
    assert legiplan.visibility((1, 0), (0, 0), 0.0)
    assert not legiplan.visibility((-1, 0), (0, 0), 0.0)
    pts = [(float(x), 0.0) for x in range(1, 7)]
    assert legiplan.fov_cost(pts, (0, 0), math.radians(-60), math.radians(120)) == pytest.approx(6 * math.tanh(1))


def test_parse_errors_raise():
    with pytest.raises(legiplan.ValidationError):
        legiplan.parse_scenario('{"version": 1, "robot": {"x": 0, "y": 0}, "goals": []}')


def test_plan_once():
    s = fig1()
    result = legiplan.plan_once(s)
    assert len(result["waypoints"]) == 13
    assert not result["breakdown"].collided
    assert set(result["predictions"]) == set(s.goal_ids)


def test_closed_loop_and_evaluate():
    s = fig1()
    legible = legiplan.run_closed_loop(s)
    s.mode = legiplan.PlannerMode.BASELINE
    baseline = legiplan.run_closed_loop(s)
    assert legible["reached"] and baseline["reached"]
    assert legible["log_csv"].startswith("t,x,y,heading,v,omega,clearance\n")
    dt = 0.4
    l_leg = legiplan.evaluate(legible["waypoints"], dt, s)["score"]
    l_base = legiplan.evaluate(baseline["waypoints"], dt, s)["score"]
    assert l_leg > l_base
    svg = legiplan.render_svg(s, legible["waypoints"], baseline["waypoints"])
    assert svg.startswith("<svg")


def test_lambda_zero_matches_baseline():
    s = fig1()
    s.lambda_sim = 0.0
    s.lambda_fov = 0.0
    legible = legiplan.plan_once(s)
    s.mode = legiplan.PlannerMode.BASELINE
    baseline = legiplan.plan_once(s)
    assert legible["waypoints"] == baseline["waypoints"]
