# aerolos/blockage_engine/obstacles/base.py

from abc import ABC, abstractmethod

import numpy as np

from aerolos.blockage_engine.models import ScenarioHeights


class BaseObstacle(ABC):
    """
    Abstract base for building footprints that can shadow users.

    An obstacle answers one geometric question, `crossings`, for a batch of
    users: where along each 2D link o->user does the link leave the footprint?
    Blocking and rooftop clearance then follow from the heights alone, so
    every footprint shares the same LOS rule.
    """
    @property
    @abstractmethod
    def count(self) -> int:
        """Number of footprints held by this obstacle."""
        pass

    @abstractmethod
    def crossings(self, users: np.ndarray) -> np.ndarray:
        """
        Returns an (M, N) array: for each of the M users and N footprints, the
        fraction t in (0, 1] of the link at which it leaves the footprint, or
        NaN when the link misses it.
        """
        pass

    def blocked(self, users: np.ndarray, heights: ScenarioHeights) -> np.ndarray:
        """(M,) mask of users whose link is blocked by at least one footprint."""
        if self.count == 0:
            return np.zeros(len(np.atleast_2d(users)), dtype=bool)
        t = self.crossings(users)
        with np.errstate(invalid="ignore"):
            return np.any(t >= heights.clearance_ratio, axis=1)

    def cleared(self, users: np.ndarray, heights: ScenarioHeights) -> np.ndarray:
        """(M,) mask of users whose link crosses a footprint but passes over its roof."""
        if self.count == 0:
            return np.zeros(len(np.atleast_2d(users)), dtype=bool)
        t = self.crossings(users)
        with np.errstate(invalid="ignore"):
            return np.any(t < heights.clearance_ratio, axis=1) & ~np.any(t >= heights.clearance_ratio, axis=1)
