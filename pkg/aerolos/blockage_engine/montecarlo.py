# aerolos/blockage_engine/montecarlo.py
"""
Ground-truth estimators: spatial-average connectivity by simulation, and
rejection-sampling area oracles for the closed forms in `geometry`.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from .errors import PreconditionError
from .geometry import effective_radius
from .models import AreaEstimate, BuildingSegment, ConnectivityEstimate, ScenarioHeights
from .obstacles import BaseObstacle, Footprint, SegmentObstacle, as_obstacle
from .process import sample_buildings, sample_users
from .scenario import Scenario

logger = logging.getLogger(__name__)

MIN_ORACLE_SAMPLES = 10_000
# Users per vectorized batch in the oracles; bounds peak memory at 1e6 samples.
ORACLE_CHUNK = 250_000


def _realization_connectivity(scenario: Scenario, radius: float, users_per_realization: int, seed: int,
                              index: int, fixed: Optional[BaseObstacle]) -> float:
    if fixed is not None:
        obstacle = fixed
    else:
        obstacle = SegmentObstacle.from_realization(sample_buildings(scenario.building_process, seed, index))
    users = sample_users(users_per_realization, radius, seed, index)
    return 1.0 - float(np.mean(obstacle.blocked(users, scenario.heights)))


def estimate_connectivity(
    scenario: Scenario,
    n_realizations: Optional[int] = None,
    users_per_realization: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
    buildings: Optional[Sequence[BuildingSegment]] = None,
) -> ConnectivityEstimate:
    """
    Monte Carlo estimate of the spatial-average connectivity p_c.

    Each realization draws a building layout on the padded window and a batch
    of users on the efficient disk; a user is connected iff no building blocks
    its link, so overlapping shadows count once. The standard error is taken
    across realization means. Passing `buildings` fixes the layout for every
    realization. Counts and seed default to `scenario.monte_carlo`.

    Raises:
        EmptyDiskError: if the scenario's coverage disk is empty.
    """
    controls = scenario.monte_carlo
    n_realizations = controls.realizations if n_realizations is None else n_realizations
    users_per_realization = (
        controls.users_per_realization if users_per_realization is None else users_per_realization
    )
    seed = controls.seed if seed is None else seed
    if n_realizations < 1 or users_per_realization < 1:
        raise ValueError("realization and user counts must be at least 1")

    radius = effective_radius(scenario.max_range, scenario.heights)
    fixed = SegmentObstacle(buildings) if buildings is not None else None

    def run(index: int) -> float:
        return _realization_connectivity(scenario, radius, users_per_realization, seed, index, fixed)

    logger.info("Simulating %d realizations x %d users (seed=%d, threads=%d)...",
                n_realizations, users_per_realization, seed, threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            means = np.fromiter(pool.map(run, range(n_realizations)), dtype=float, count=n_realizations)
    else:
        means = np.fromiter((run(i) for i in range(n_realizations)), dtype=float, count=n_realizations)

    p_c_hat = float(np.mean(means))
    standard_error = float(np.std(means, ddof=1) / math.sqrt(n_realizations)) if n_realizations > 1 else 0.0
    logger.info("✅ p_c_hat = %.6f +/- %.6f", p_c_hat, standard_error)
    return ConnectivityEstimate(
        p_c_hat=min(1.0, max(0.0, p_c_hat)),
        standard_error=standard_error,
        n_realizations=n_realizations,
        users_per_realization=users_per_realization,
        seed=seed,
    )


def _hit_fraction(obstacle: BaseObstacle, heights: ScenarioHeights, radius: float, n_samples: int,
                  seed: int, cleared: bool) -> AreaEstimate:
    if n_samples < MIN_ORACLE_SAMPLES:
        raise ValueError(f"oracles need at least {MIN_ORACLE_SAMPLES} samples")
    users = sample_users(n_samples, radius, seed)
    hits = 0
    for start in range(0, n_samples, ORACLE_CHUNK):
        batch = users[start:start + ORACLE_CHUNK]
        mask = obstacle.cleared(batch, heights) if cleared else obstacle.blocked(batch, heights)
        hits += int(np.count_nonzero(mask))
    disk_area = math.pi * radius * radius
    fraction = hits / n_samples
    return AreaEstimate(
        area_hat=fraction * disk_area,
        standard_error=disk_area * math.sqrt(fraction * (1.0 - fraction) / n_samples),
        n_samples=n_samples,
    )


def shadow_area_oracle(building: Footprint, heights: ScenarioHeights, radius: float,
                       n_samples: int, seed: int) -> AreaEstimate:
    """Blocked area of one building by rejection sampling on the efficient disk."""
    return _hit_fraction(as_obstacle(building), heights, radius, n_samples, seed, cleared=False)


def gain_area_oracle(building: BuildingSegment, heights: ScenarioHeights, radius: float,
                     n_samples: int, seed: int) -> AreaEstimate:
    """
    Area of users whose 2D link crosses the wall but whose 3D link clears the roof.

    Raises:
        PreconditionError: if H_a <= H_b.
    """
    if not heights.aap_above_rooftop:
        raise PreconditionError("gain oracle needs H_a > H_b")
    return _hit_fraction(as_obstacle(building), heights, radius, n_samples, seed, cleared=True)
