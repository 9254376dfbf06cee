# aerolos/blockage_engine/analytic.py
"""
Campbell-theorem lower bound on the connectivity probability.

Each building contributes at most S_b^(+) to the blocked area and overlaps
are ignored, so 1 - E[sum S_b^(+)] / |O| bounds p_c from below:

    p_c^(-) = 1 - (2 lambda_b / Lambda_H^2) E_{l, omega}[ int_0^Lambda_H S_b^(+)(r, l, omega) r dr ]
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from pydantic import ValidationError

from .errors import AerolosError, DegenerateObstacleError, describe_error
from .geometry import sector_gain, span_angles
from .models import AltitudePoint, AltitudeSweep, BoundResult, QuadratureSpec
from .scenario import Scenario

logger = logging.getLogger(__name__)


def _upper_integrand(r: float, length: float, orientation: float, radius: float,
                     omega_h: Optional[float]) -> float:
    try:
        d_s, d_l, theta = span_angles(r, length, orientation, radius)
    except DegenerateObstacleError:
        # o on the wall: everything but a measure-zero set is behind it
        return 0.5 * math.pi * radius * radius
    area = 0.5 * (theta * radius * radius - d_s * d_s * math.sin(theta))
    if omega_h is not None:
        area -= sector_gain(theta, d_l, radius, omega_h)
    return max(0.0, area)


def blocked_area_upper_integrand(r: float, length: float, orientation: float, scenario: Scenario) -> float:
    """
    Per-building blocked-area upper bound S_b^(+) for a center at distance r.

    1/2 (theta Lambda_H^2 - d_S^2 sin theta), minus the far-point gain bound
    (theta/2) [Lambda_H^2 - (Omega_H d_L)^2]^+ when the AAP is above the roof.
    """
    if r < 0.0:
        raise ValueError("radial distance must be non-negative")
    return _upper_integrand(r, length, orientation, scenario.effective_radius, scenario.heights.omega_h)


def _campbell_integral(scenario: Scenario, quad: QuadratureSpec) -> float:
    """E_{l, omega} int_0^Lambda_H S_b^(+)(r, l, omega) r dr, with l outermost."""
    radius = scenario.effective_radius
    omega_h = scenario.heights.omega_h
    process = scenario.process

    def radial(length: float, orientation: float) -> float:
        return quad.integrate(
            lambda r: _upper_integrand(r, length, orientation, radius, omega_h) * r,
            0.0, radius, points=[0.5 * length],
        )

    def over_orientation(length: float) -> float:
        return process.orientation_distribution.expectation(
            lambda orientation: radial(length, orientation), quad, points=[0.5 * math.pi]
        )

    return process.length_distribution.expectation(over_orientation, quad)


def connectivity_lower_bound(scenario: Scenario, quad: Optional[QuadratureSpec] = None) -> BoundResult:
    """
    Evaluates p_c^(-) by nested adaptive quadrature over (l, omega, r).

    Point-mass length or orientation distributions skip their dimension.
    Raw values outside [0, 1] are clipped and flagged.

    Raises:
        QuadratureNonConvergenceError: if any level exhausts its subdivisions.
    """
    quad = quad or scenario.quadrature
    density = scenario.process.density
    radius = scenario.effective_radius
    if density == 0.0:
        return BoundResult(p_c_lower=1.0, raw_value=1.0, mean_blocked_area=0.0)

    logger.info("Integrating blocked-area bound (lambda_b=%.6g, Lambda_H=%.6g)...", density, radius)
    integral = _campbell_integral(scenario, quad)
    raw_value = 1.0 - 2.0 * density * integral / (radius * radius)
    p_c_lower = min(1.0, max(0.0, raw_value))
    clipped = p_c_lower != raw_value
    if clipped:
        logger.info("Bound clipped: raw value %.6g", raw_value)
    return BoundResult(
        p_c_lower=p_c_lower,
        raw_value=raw_value,
        mean_blocked_area=2.0 * math.pi * density * integral,
        clipped=clipped,
    )


def sweep_altitude(scenario: Scenario, h_a_grid: Sequence[float], quad: Optional[QuadratureSpec] = None,
                   threads: int = 1) -> AltitudeSweep:
    """
    p_c^(-) at every grid altitude, in grid order, plus the argmax.

    A failing altitude (empty disk, nonconvergence) is logged and recorded
    with its error; it never stops the sweep. Ties go to the lowest altitude.
    """
    def evaluate(altitude: float) -> AltitudePoint:
        try:
            bound = connectivity_lower_bound(scenario.with_value("h_a", altitude), quad)
        except (AerolosError, ValidationError, ValueError) as exc:
            logger.warning("H_a=%.6g failed: %s", altitude, exc)
            return AltitudePoint(aap_altitude=altitude, error=describe_error(exc))
        return AltitudePoint(aap_altitude=altitude, p_c_lower=bound.p_c_lower)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(pool.map(evaluate, h_a_grid))
    else:
        points = [evaluate(altitude) for altitude in h_a_grid]

    best: Optional[AltitudePoint] = None
    for point in points:
        if point.p_c_lower is None:
            continue
        if (best is None or point.p_c_lower > best.p_c_lower
                or (point.p_c_lower == best.p_c_lower and point.aap_altitude < best.aap_altitude)):
            best = point
    if best is None:
        return AltitudeSweep(points=points)
    return AltitudeSweep(points=points, best_altitude=best.aap_altitude, best_p_c_lower=best.p_c_lower)
