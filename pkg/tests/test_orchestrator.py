# tests/test_orchestrator.py

import pytest

from aerolos.blockage_engine.orchestrator import SweepOrchestrator
from aerolos.config.scenario_file import build_scenario

FAST = {"realizations": 30, "users_per_realization": 150, "len_dist": "fixed", "len_value": 8.0}


def test_rows_follow_grid_order():
    scenario = build_scenario({**FAST, "seed": 2})
    rows = SweepOrchestrator(scenario, "lambda_b").run([5e-4, 1e-5, 1e-4])
    assert [row.value for row in rows] == [5e-4, 1e-5, 1e-4]
    assert all(row.error is None for row in rows)
    by_density = sorted(rows, key=lambda row: row.value)
    assert by_density[0].p_c_lower > by_density[1].p_c_lower > by_density[2].p_c_lower


def test_bound_stays_below_simulation_over_densities():
    scenario = build_scenario({**FAST, "seed": 4})
    rows = SweepOrchestrator(scenario, "lambda_b", threads=2).run([1e-5, 1e-4, 5e-4])
    for row in rows:
        assert row.p_c_lower <= row.p_c_hat + 3 * row.standard_error


def test_failures_are_recorded_and_the_sweep_continues():
    scenario = build_scenario({**FAST, "lambda_b": 0.0})
    rows = SweepOrchestrator(scenario, "h_b").run([1.0, 40.0])
    assert rows[0].p_c_hat is None and rows[0].error
    assert rows[1].p_c_hat == 1.0 and rows[1].p_c_lower == 1.0


def test_seed_override_is_deterministic():
    scenario = build_scenario(FAST)
    first = SweepOrchestrator(scenario, "lambda_b", seed=9).run([2e-4])
    again = SweepOrchestrator(scenario, "lambda_b", seed=9, threads=3).run([2e-4])
    assert first == again


def _non_increasing(values, slack=None):
    slack = slack or [0.0] * len(values)
    return all(cur <= prev + tol for prev, cur, tol in zip(values, values[1:], slack[1:]))


@pytest.mark.slow
def test_density_sweep_is_monotone_and_bound_loosens():
    scenario = build_scenario({"realizations": 2000, "users_per_realization": 200,
                               "len_dist": "fixed", "len_value": 15.0, "seed": 11})
    rows = SweepOrchestrator(scenario, "lambda_b", threads=4).run([1e-5, 1e-4, 5e-4])
    assert all(row.error is None for row in rows)
    sigma = max(row.standard_error for row in rows)
    assert _non_increasing([row.p_c_hat for row in rows], [3 * sigma] * len(rows))
    assert _non_increasing([row.p_c_lower for row in rows])
    gaps = [row.p_c_hat - row.p_c_lower for row in rows]
    assert gaps[0] < gaps[-1]


def test_building_height_sweep_is_monotone():
    scenario = build_scenario({**FAST, "seed": 5})
    rows = SweepOrchestrator(scenario, "h_b").run([10.0, 30.0, 45.0])
    assert all(row.error is None for row in rows)
    # Layouts and users are shared across the grid, so taller roofs can only block more links.
    assert _non_increasing([row.p_c_hat for row in rows])
    assert _non_increasing([row.p_c_lower for row in rows])
    assert rows[0].p_c_hat > rows[-1].p_c_hat
