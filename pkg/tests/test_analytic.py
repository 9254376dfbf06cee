# tests/test_analytic.py

import math

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from scipy import integrate

from aerolos.blockage_engine import geometry
from aerolos.blockage_engine.analytic import (
    blocked_area_upper_integrand,
    connectivity_lower_bound,
    sweep_altitude,
)
from aerolos.blockage_engine.errors import QuadratureNonConvergenceError
from aerolos.blockage_engine.models import BuildingSegment, QuadratureSpec
from aerolos.blockage_engine.montecarlo import estimate_connectivity
from aerolos.config.scenario_file import build_scenario

FIXED_LENGTH = {"len_dist": "fixed", "len_value": 8.0}
POINT_MASSES = {**FIXED_LENGTH, "orientation_dist": "fixed", "orientation_value": 1.0}


def test_integrand_vanishes_for_point_obstacle():
    scenario = build_scenario({})
    assert blocked_area_upper_integrand(10.0, 0.0, 1.0, scenario) == 0.0


def test_integrand_without_gain_uses_near_chord():
    scenario = build_scenario({"h_a": 30.0})
    radius = scenario.effective_radius
    d_s, _ = geometry.chord_distances(BuildingSegment(center=(25.0, 0.0), length=6.0, orientation=0.8), radius)
    theta = geometry.span_angles(25.0, 6.0, 0.8, radius)[2]
    expected = 0.5 * (theta * radius ** 2 - d_s ** 2 * math.sin(theta))
    assert blocked_area_upper_integrand(25.0, 6.0, 0.8, scenario) == pytest.approx(expected)


def test_integrand_worst_case_when_wall_crosses_origin():
    scenario = build_scenario({})
    radius = scenario.effective_radius
    assert blocked_area_upper_integrand(1.0, 6.0, math.pi / 2, scenario) == pytest.approx(0.5 * math.pi * radius ** 2)


@hyp_settings(max_examples=300, deadline=None)
@given(
    r=st.floats(min_value=0.0, max_value=120.0),
    length=st.floats(min_value=0.0, max_value=15.0),
    orientation=st.floats(min_value=1e-6, max_value=math.pi),
    h_a=st.sampled_from([20.0, 30.0, 35.0, 50.0, 58.0, 80.0]),
)
def test_integrand_dominates_exact_shadow(r, length, orientation, h_a):
    scenario = build_scenario({"h_a": h_a})
    radius = scenario.effective_radius
    r = max(r, 0.5 * length + 0.01)
    building = BuildingSegment(center=(r, 0.0), length=length, orientation=orientation)
    exact = geometry.shadow_area_exact(building, scenario.heights, radius)
    assert blocked_area_upper_integrand(r, length, orientation, scenario) >= exact - 1e-7


def test_zero_density_bound_is_one():
    result = connectivity_lower_bound(build_scenario({"lambda_b": 0.0}))
    assert result.p_c_lower == 1.0
    assert result.mean_blocked_area == 0.0
    assert not result.clipped


def test_point_masses_reduce_to_radial_integral():
    scenario = build_scenario(POINT_MASSES)
    radius = scenario.effective_radius
    radial, _ = integrate.quad(lambda r: blocked_area_upper_integrand(r, 8.0, 1.0, scenario) * r, 0.0, radius,
                               points=[4.0], epsabs=1e-10, epsrel=1e-10, limit=200)
    expected = 1.0 - 2.0 * 2e-4 * radial / radius ** 2
    result = connectivity_lower_bound(scenario)
    assert result.raw_value == pytest.approx(expected, abs=1e-6)
    assert result.mean_blocked_area == pytest.approx(2.0 * math.pi * 2e-4 * radial, rel=1e-5)


def test_blocked_fraction_is_linear_in_density():
    low = connectivity_lower_bound(build_scenario({**FIXED_LENGTH, "lambda_b": 1e-4}))
    high = connectivity_lower_bound(build_scenario({**FIXED_LENGTH, "lambda_b": 3e-4}))
    assert 1.0 - high.raw_value == pytest.approx(3.0 * (1.0 - low.raw_value), rel=1e-9)
    assert high.p_c_lower < low.p_c_lower


def test_dense_city_is_clipped():
    result = connectivity_lower_bound(build_scenario({**FIXED_LENGTH, "lambda_b": 1.0}))
    assert result.p_c_lower == 0.0
    assert result.raw_value < 0.0
    assert result.clipped


def test_halving_tolerances_is_stable():
    scenario = build_scenario(FIXED_LENGTH)
    coarse = connectivity_lower_bound(scenario, QuadratureSpec(relative_tolerance=1e-4, absolute_tolerance=1e-6))
    fine = connectivity_lower_bound(scenario, QuadratureSpec(relative_tolerance=5e-5, absolute_tolerance=5e-7))
    assert abs(coarse.p_c_lower - fine.p_c_lower) < 1e-4


def test_quadrature_reports_exhausted_subdivisions():
    quad = QuadratureSpec(relative_tolerance=1e-14, absolute_tolerance=1e-14, max_subdivisions=1)
    with pytest.raises(QuadratureNonConvergenceError):
        quad.integrate(lambda x: abs(x - 0.3) ** 0.5, 0.0, 1.0)


@pytest.mark.slow
def test_bound_lies_below_simulation_at_reference_density():
    scenario = build_scenario({"realizations": 300, "users_per_realization": 300, "seed": 3})
    bound = connectivity_lower_bound(scenario)
    estimate = estimate_connectivity(scenario)
    assert 0.0 < bound.p_c_lower <= estimate.p_c_hat + 3 * estimate.standard_error


def test_altitude_sweep_single_point():
    sweep = sweep_altitude(build_scenario(FIXED_LENGTH), [50.0])
    assert len(sweep.points) == 1
    assert sweep.best_altitude == 50.0
    assert sweep.best_p_c_lower == sweep.points[0].p_c_lower


def test_altitude_sweep_ties_go_to_lowest_altitude():
    sweep = sweep_altitude(build_scenario({"lambda_b": 0.0}), [60.0, 40.0, 50.0])
    assert [p.p_c_lower for p in sweep.points] == [1.0, 1.0, 1.0]
    assert sweep.best_altitude == 40.0


def test_altitude_sweep_marks_failed_points():
    sweep = sweep_altitude(build_scenario({"lambda_b": 0.0}), [40.0, 150.0])
    assert sweep.points[0].error is None
    assert sweep.points[1].p_c_lower is None
    assert "empty" in sweep.points[1].error
    assert sweep.best_altitude == 40.0
