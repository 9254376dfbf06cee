# aerolos/blockage_engine/geometry.py
"""
Shadow geometry of a single height-limited obstacle on the efficient coverage disk.

The AAP's ground projection o is the origin. All lengths are meters, angles
radians, areas square meters. Every function here is pure.
"""

import math
from typing import Tuple

import numpy as np

from .errors import DegenerateObstacleError, EmptyDiskError, PreconditionError
from .models import (
    BlockageAngles,
    BuildingSegment,
    DiskBuilding,
    LinkBudget,
    QuadratureSpec,
    ScenarioHeights,
)

# Clamp slack for arccos arguments and the radius under which o counts as lying on a wall.
ARCCOS_TOLERANCE = 1e-12
DEGENERATE_TOLERANCE = 1e-9

# The gain integrand is smooth on its active span, so it can afford tight tolerances.
GAIN_QUADRATURE = QuadratureSpec(relative_tolerance=1e-10, absolute_tolerance=1e-10, max_subdivisions=100)


# --- Link budget & disk ---

def max_range(budget: LinkBudget) -> float:
    """R_max = (G / (sigma^2 gamma))^(1/alpha)."""
    ratio = budget.beam_gain / (budget.normalized_noise * budget.snr_threshold)
    return ratio ** (1.0 / budget.pathloss_exponent)


def effective_radius(r_max: float, heights: ScenarioHeights) -> float:
    """
    Radius Lambda_H of the efficient coverage disk at user height.

    Raises:
        EmptyDiskError: if H_a - H_u >= r_max.
    """
    span = heights.aap_altitude - heights.user_height
    if span >= r_max:
        raise EmptyDiskError(
            f"H_a - H_u = {span:.6g} m reaches R_max = {r_max:.6g} m; the efficient coverage disk is empty"
        )
    return math.sqrt(r_max * r_max - span * span)


# --- Scalar kernel (floats in, floats out) ---

def _raw_chords(d_x: float, length: float, orientation: float) -> Tuple[float, float]:
    if length == 0.0:
        return d_x, d_x
    # Endpoint distances from the foot of the perpendicular.
    perpendicular = d_x * abs(math.cos(orientation))
    foot_offset = d_x * math.sin(orientation)
    return (math.hypot(perpendicular, 0.5 * length - foot_offset),
            math.hypot(perpendicular, 0.5 * length + foot_offset))


def _check_not_degenerate(d_x: float, length: float, orientation: float) -> None:
    perpendicular = d_x * abs(math.cos(orientation))
    if perpendicular <= DEGENERATE_TOLERANCE and d_x <= 0.5 * length + DEGENERATE_TOLERANCE:
        raise DegenerateObstacleError(
            f"segment (d_x={d_x:.6g}, l={length:.6g}, omega={orientation:.6g}) passes through o"
        )


def _min_distance(d_x: float, length: float, orientation: float) -> float:
    foot_offset = d_x * math.sin(orientation)
    if foot_offset <= 0.5 * length:
        return d_x * abs(math.cos(orientation))
    return _raw_chords(d_x, length, orientation)[0]


def _chords(d_x: float, length: float, orientation: float, radius: float) -> Tuple[float, float, bool]:
    """(d_S, d_L, outside). A segment whose near end is at or beyond Lambda_H casts nothing."""
    _check_not_degenerate(d_x, length, orientation)
    d_s, d_l = _raw_chords(d_x, length, orientation)
    if d_s <= DEGENERATE_TOLERANCE:
        raise DegenerateObstacleError(
            f"near end of segment (d_x={d_x:.6g}, l={length:.6g}, omega={orientation:.6g}) sits on o"
        )
    if d_s >= radius:
        return radius, radius, True
    return d_s, min(radius, d_l), False


def _theta(d_x: float, length: float, d_s: float, d_l: float) -> float:
    denominator = d_s * d_l
    if denominator <= 0.0:
        raise DegenerateObstacleError(f"segment (d_x={d_x:.6g}, l={length:.6g}) has an endpoint on o")
    argument = (d_x - 0.5 * length) * (d_x + 0.5 * length) / denominator
    return math.acos(min(1.0, max(-1.0, argument)))


def _beta(theta: float, d_s: float, d_l: float) -> float:
    if theta <= 0.0:
        return 0.0
    return math.atan2(math.cos(theta) - d_s / d_l, math.sin(theta))


def span_angles(d_x: float, length: float, orientation: float, radius: float) -> Tuple[float, float, float]:
    """(d_S, d_L, theta) with d_L capped at Lambda_H; theta is 0 for an outside segment."""
    d_s, d_l, outside = _chords(d_x, length, orientation, radius)
    if outside:
        return d_s, d_l, 0.0
    return d_s, d_l, _theta(d_x, length, d_s, d_l)


def _shadow_without_gain(d_s: float, d_l: float, theta: float, radius: float) -> float:
    return max(0.0, 0.5 * (theta * radius * radius - d_s * d_l * math.sin(theta)))


def sector_gain(theta: float, distance: float, radius: float, omega_h: float) -> float:
    stretched = omega_h * distance
    return 0.5 * theta * max(0.0, radius * radius - stretched * stretched)


def _coverage_gain(d_x: float, length: float, orientation: float, radius: float,
                   omega_h: float, quad: QuadratureSpec) -> float:
    d_s, d_l, theta = span_angles(d_x, length, orientation, radius)
    if theta <= 0.0:
        return 0.0
    perpendicular = d_x * abs(math.cos(orientation))
    stretched = omega_h * perpendicular
    if stretched >= radius:
        return 0.0

    # Polar form of the supporting line: d(phi) = h / cos(phi - phi_foot), phi = 0 toward the near end.
    foot_offset = d_x * math.sin(orientation)
    phi_foot = math.atan2(0.5 * length - foot_offset, perpendicular)
    half_width = math.acos(stretched / radius)
    low = max(0.0, phi_foot - half_width)
    high = min(theta, phi_foot + half_width)
    if high <= low:
        return 0.0

    radius_sq = radius * radius
    stretched_sq = stretched * stretched

    def integrand(phi: float) -> float:
        cosine = math.cos(phi - phi_foot)
        return 0.5 * max(0.0, radius_sq - stretched_sq / (cosine * cosine))

    gain = quad.integrate(integrand, low, high)
    return min(max(gain, 0.0), _shadow_without_gain(d_s, d_l, theta, radius))


def _require_gain_domain(heights: ScenarioHeights) -> float:
    omega_h = heights.omega_h
    if omega_h is None:
        raise PreconditionError(
            f"coverage gain needs H_a > H_b (H_a={heights.aap_altitude:.6g}, H_b={heights.building_height:.6g})"
        )
    return omega_h


# --- Per-building operations ---

def chord_distances(building: BuildingSegment, radius: float) -> Tuple[float, float]:
    """
    Near and far chord distances (d_S, d_L), d_L capped at Lambda_H.

    Raises:
        DegenerateObstacleError: if the segment contains o.
    """
    d_s, d_l, _ = _chords(building.distance, building.length, building.orientation, radius)
    return d_s, d_l


def blockage_angles(building: BuildingSegment, heights: ScenarioHeights, radius: float) -> BlockageAngles:
    d_x = building.distance
    d_s, d_l, theta = span_angles(d_x, building.length, building.orientation, radius)
    return BlockageAngles(
        d_x=d_x,
        d_s=d_s,
        d_l=d_l,
        d_min=min(_min_distance(d_x, building.length, building.orientation), radius),
        theta=theta,
        beta=_beta(theta, d_s, d_l),
        omega_h=heights.omega_h,
    )


def shadow_without_gain(building: BuildingSegment, radius: float) -> float:
    """1/2 (theta Lambda_H^2 - d_S d_L sin theta): the shadow when the AAP is not above the roof."""
    d_s, d_l, theta = span_angles(building.distance, building.length, building.orientation, radius)
    return _shadow_without_gain(d_s, d_l, theta, radius)


def coverage_gain_exact(building: BuildingSegment, heights: ScenarioHeights, radius: float,
                        quad: QuadratureSpec = GAIN_QUADRATURE) -> float:
    """
    Area recovered behind the building because rays clear the rooftop.

    Integrates 1/2 [Lambda_H^2 - (Omega_H d(phi))^2]^+ over the part of the
    angular span where the stretched line stays inside the disk. The result
    is clipped to [0, shadow_without_gain].

    Raises:
        PreconditionError: if H_a <= H_b.
    """
    omega_h = _require_gain_domain(heights)
    return _coverage_gain(building.distance, building.length, building.orientation, radius, omega_h, quad)


def shadow_area_exact(building: BuildingSegment, heights: ScenarioHeights, radius: float,
                      quad: QuadratureSpec = GAIN_QUADRATURE) -> float:
    """Blocking area S_b(x) of one segment; lies in [0, theta Lambda_H^2 / 2]."""
    d_x, length, orientation = building.distance, building.length, building.orientation
    d_s, d_l, theta = span_angles(d_x, length, orientation, radius)
    area = _shadow_without_gain(d_s, d_l, theta, radius)
    if heights.omega_h is not None and area > 0.0:
        area -= _coverage_gain(d_x, length, orientation, radius, heights.omega_h, quad)
    return max(0.0, area)


def coverage_gain_bounds(building: BuildingSegment, heights: ScenarioHeights, radius: float) -> Tuple[float, float]:
    """
    (S_gain^(-), S_gain^(+)): the gain with every wall point moved to d_L, resp. to the nearest wall point.

    Raises:
        PreconditionError: if H_a <= H_b.
    """
    omega_h = _require_gain_domain(heights)
    d_x, length, orientation = building.distance, building.length, building.orientation
    d_s, d_l, theta = span_angles(d_x, length, orientation, radius)
    if theta <= 0.0:
        return 0.0, 0.0
    ceiling = _shadow_without_gain(d_s, d_l, theta, radius)
    lower = min(sector_gain(theta, d_l, radius, omega_h), ceiling)
    upper = sector_gain(theta, _min_distance(d_x, length, orientation), radius, omega_h)
    return lower, max(lower, upper)


def shadow_area_bounds(building: BuildingSegment, heights: ScenarioHeights, radius: float) -> Tuple[float, float]:
    """(S_b^(-), S_b^(+)); equal to the exact area when H_a <= H_b."""
    no_gain = shadow_without_gain(building, radius)
    if heights.omega_h is None:
        return no_gain, no_gain
    gain_lower, gain_upper = coverage_gain_bounds(building, heights, radius)
    return max(0.0, no_gain - gain_upper), max(0.0, no_gain - gain_lower)


# --- Altitude ---

def optimal_altitude(d_l: float, heights: ScenarioHeights) -> float:
    """H_a* = (d_L^2 (H_b - H_u))^(1/3) + H_b, the maximizer of S_gain^(-) over H_a."""
    rise = heights.building_height - heights.user_height
    return (d_l * d_l * rise) ** (1.0 / 3.0) + heights.building_height


def gain_lower_profile(d_l: float, altitudes: np.ndarray, building_height: float,
                       user_height: float, r_max: float) -> np.ndarray:
    """
    Altitude-dependent factor 1/2 [Lambda_H^2 - (Omega_H d_L)^2]^+ of S_gain^(-), per radian of theta.

    Altitudes at or below the rooftop, or outside the coverage sphere, give 0.
    """
    altitudes = np.asarray(altitudes, dtype=float)
    span = altitudes - user_height
    radius_sq = r_max * r_max - span * span
    above = altitudes > building_height
    with np.errstate(divide="ignore", invalid="ignore"):
        omega_h = np.where(above, span / (altitudes - building_height), np.inf)
        value = 0.5 * (radius_sq - (omega_h * d_l) ** 2)
    return np.where(above & (radius_sq > 0.0) & (value > 0.0), value, 0.0)


def grid_search_altitude(d_l: float, heights: ScenarioHeights, r_max: float, step: float = 0.01) -> float:
    """Dense-grid argmax of S_gain^(-) over H_a in (H_b, H_u + R_max); ties go to the lowest altitude."""
    start = heights.building_height + step
    stop = heights.user_height + r_max
    if start >= stop:
        return heights.building_height
    grid = start + step * np.arange(int(math.floor((stop - start) / step)) + 1)
    grid = grid[grid < stop]
    profile = gain_lower_profile(d_l, grid, heights.building_height, heights.user_height, r_max)
    return float(grid[int(np.argmax(profile))])


def has_interior_optimum(d_l: float, heights: ScenarioHeights, r_max: float) -> bool:
    """Whether (Omega_H d_L)^2 < Lambda_H^2 holds at H_a*, the condition under which H_a* is the maximizer."""
    best = optimal_altitude(d_l, heights)
    return bool(gain_lower_profile(d_l, np.array([best]), heights.building_height,
                                   heights.user_height, r_max)[0] > 0.0)


# --- Disk (cylinder) buildings ---

def _disk_terms(building: DiskBuilding, heights: ScenarioHeights, radius: float) -> Tuple[float, float, float, float]:
    d_x = building.distance
    rho = 0.5 * building.diameter
    if d_x <= rho:
        raise DegenerateObstacleError(f"o lies inside the disk footprint (d_x={d_x:.6g}, radius={rho:.6g})")
    theta = 2.0 * math.asin(rho / d_x)
    gain = 0.0
    if heights.omega_h is not None:
        gain = sector_gain(theta, d_x + rho, radius, heights.omega_h)
    return d_x, rho, theta, gain


def disk_shadow_area(building: DiskBuilding, heights: ScenarioHeights, radius: float) -> float:
    """
    Shadow of a cylindrical building, footprint included.

    The no-gain part is the sector minus the kite between o and the two
    tangent points, plus the disk's far cap; the gain term is the far-point
    lower bound, so for H_a > H_b the result over-estimates the true shadow.

    Raises:
        DegenerateObstacleError: if o lies inside the footprint.
    """
    d_x, rho, theta, gain = _disk_terms(building, heights, radius)
    if d_x - rho >= radius:
        return 0.0
    kite = rho * math.sqrt(d_x * d_x - rho * rho)
    near_cap = 0.5 * rho * rho * (math.pi - theta)
    no_gain = 0.5 * theta * radius * radius - kite + near_cap
    return max(0.0, no_gain - gain)


def compact_disk_shadow_area(building: DiskBuilding, heights: ScenarioHeights, radius: float) -> float:
    """Compact closed form of the disk shadow: theta/2 Lambda^2 - (d_x l + l^2 (theta + pi)/8) - S_gain^(-)."""
    d_x, _, theta, gain = _disk_terms(building, heights, radius)
    if d_x - 0.5 * building.diameter >= radius:
        return 0.0
    length = building.diameter
    compact = 0.5 * theta * radius * radius - (d_x * length + 0.125 * length * length * (theta + math.pi))
    return max(0.0, compact - gain)


# --- Vectorized link tests ---

def segment_endpoints(centers: np.ndarray, lengths: np.ndarray,
                      orientations: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Near and far endpoints, shape (N, 2) each, under the normal-referenced orientation convention."""
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    lengths = np.asarray(lengths, dtype=float).reshape(-1)
    orientations = np.asarray(orientations, dtype=float).reshape(-1)
    d_x = np.hypot(centers[:, 0], centers[:, 1])
    safe = np.where(d_x > 0.0, d_x, 1.0)
    toward_o = np.where(d_x[:, None] > 0.0, -centers / safe[:, None], np.array([1.0, 0.0]))
    normal = np.column_stack((-toward_o[:, 1], toward_o[:, 0]))
    direction = np.cos(orientations)[:, None] * normal + np.sin(orientations)[:, None] * toward_o
    half = 0.5 * lengths[:, None] * direction
    return centers + half, centers - half


def segment_crossings(users: np.ndarray, near: np.ndarray, far: np.ndarray) -> np.ndarray:
    """
    Fraction t in (0, 1] along each link o->user at which it crosses each segment.

    Returns an (M, N) array, NaN where the link misses the segment. Grazing an
    endpoint or running parallel to the wall counts as a miss.
    """
    users = np.atleast_2d(np.asarray(users, dtype=float))
    wall = far - near
    denom = users[:, None, 0] * wall[None, :, 1] - users[:, None, 1] * wall[None, :, 0]
    num_t = near[:, 0] * wall[:, 1] - near[:, 1] * wall[:, 0]
    num_s = near[None, :, 0] * users[:, None, 1] - near[None, :, 1] * users[:, None, 0]
    scale = np.hypot(users[:, 0], users[:, 1])[:, None] * np.hypot(wall[:, 0], wall[:, 1])[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = num_t[None, :] / denom
        s = num_s / denom
        hit = (np.abs(denom) > 1e-14 * scale) & (s > 0.0) & (s < 1.0) & (t > 0.0) & (t <= 1.0)
    return np.where(hit, t, np.nan)


def disk_crossings(users: np.ndarray, centers: np.ndarray, diameters: np.ndarray) -> np.ndarray:
    """
    Fraction t at which each link o->user leaves each disk footprint, capped at 1.

    Users standing inside a footprint get t = 1. Tangent links miss. Shape (M, N).
    """
    users = np.atleast_2d(np.asarray(users, dtype=float))
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    rho = 0.5 * np.asarray(diameters, dtype=float).reshape(-1)
    uu = np.einsum("ij,ij->i", users, users)[:, None]
    uc = users @ centers.T
    cc = np.einsum("ij,ij->i", centers, centers)[None, :]
    disc = uc * uc - uu * (cc - rho[None, :] ** 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.sqrt(np.where(disc > 0.0, disc, 0.0))
        t_in = (uc - root) / uu
        t_out = (uc + root) / uu
        hit = (disc > 0.0) & (uu > 0.0) & (t_in <= 1.0) & (t_out > 0.0)
    return np.where(hit, np.minimum(t_out, 1.0), np.nan)


def blocked_by_crossing(crossings: np.ndarray, heights: ScenarioHeights) -> np.ndarray:
    """A crossing blocks when the link is at or below rooftop height there (t >= clearance ratio)."""
    with np.errstate(invalid="ignore"):
        return crossings >= heights.clearance_ratio


def los_test(user: Tuple[float, float], building: BuildingSegment, heights: ScenarioHeights) -> bool:
    """True when the 3D link from the AAP to `user` is blocked by `building`."""
    near, far = segment_endpoints(np.array([building.center]), np.array([building.length]),
                                  np.array([building.orientation]))
    crossing = segment_crossings(np.array([user], dtype=float), near, far)
    return bool(blocked_by_crossing(crossing, heights)[0, 0])
