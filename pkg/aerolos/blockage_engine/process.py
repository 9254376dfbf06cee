# aerolos/blockage_engine/process.py
"""Seeded sampling of the Boolean line-segment building process and of user drops."""

import logging
import math

import numpy as np

from .geometry import DEGENERATE_TOLERANCE
from .models import BuildingProcessParams, BuildingRealization, BuildingSegment

logger = logging.getLogger(__name__)

# Spawn-key slots: each realization index owns one substream per purpose.
BUILDINGS_STREAM = 0
USERS_STREAM = 1


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for (seed, key...), identical on every call and in every thread."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(key)))


def _uniform_in_disk(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.random(count))
    angle = 2.0 * math.pi * rng.random(count)
    return np.column_stack((r * np.cos(angle), r * np.sin(angle)))


def _through_origin(centers: np.ndarray, lengths: np.ndarray, orientations: np.ndarray) -> np.ndarray:
    d_x = np.hypot(centers[:, 0], centers[:, 1])
    return (d_x * np.abs(np.cos(orientations)) <= DEGENERATE_TOLERANCE) & (
        d_x <= 0.5 * lengths + DEGENERATE_TOLERANCE
    )


def sample_buildings(params: BuildingProcessParams, seed: int, index: int = 0) -> BuildingRealization:
    """
    Draws one realization of the building process on the sampling window.

    N ~ Poisson(lambda_b pi R_w^2) centers uniform on the window disk, lengths
    and orientations i.i.d. from their distributions. Buildings that would
    contain o are redrawn. `index` selects the realization's substream.
    """
    if params.sampling_window_radius is None:
        raise ValueError("sampling_window_radius must be resolved before sampling (see Scenario.building_process)")
    window = params.sampling_window_radius
    rng = substream(seed, index, BUILDINGS_STREAM)

    count = int(rng.poisson(params.density * math.pi * window * window))
    centers = _uniform_in_disk(rng, count, window)
    lengths = params.length_distribution.sample(rng, count)
    orientations = params.orientation_distribution.sample(rng, count)

    bad = _through_origin(centers, lengths, orientations)
    while bad.any():
        redraw = int(bad.sum())
        logger.debug("Redrawing %d building(s) through o (seed=%d, index=%d)", redraw, seed, index)
        centers[bad] = _uniform_in_disk(rng, redraw, window)
        lengths[bad] = params.length_distribution.sample(rng, redraw)
        orientations[bad] = params.orientation_distribution.sample(rng, redraw)
        bad = _through_origin(centers, lengths, orientations)

    buildings = [
        BuildingSegment(center=(float(c[0]), float(c[1])), length=float(l), orientation=float(w))
        for c, l, w in zip(centers, lengths, orientations)
    ]
    return BuildingRealization(buildings=buildings, seed=seed, window_radius=window)


def sample_users(n: int, radius: float, seed: int, index: int = 0) -> np.ndarray:
    """n user positions i.i.d. uniform on the disk of the given radius, shape (n, 2)."""
    if n < 1:
        raise ValueError("need at least one user")
    if radius <= 0.0:
        raise ValueError("disk radius must be positive")
    return _uniform_in_disk(substream(seed, index, USERS_STREAM), n, radius)
