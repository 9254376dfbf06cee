# aerolos/blockage_engine/obstacles/stock/segment.py

from typing import Sequence

import numpy as np

from aerolos.blockage_engine import geometry
from aerolos.blockage_engine.models import BuildingRealization, BuildingSegment
from aerolos.blockage_engine.obstacles.base import BaseObstacle


class SegmentObstacle(BaseObstacle):
    """One or more line-segment buildings, evaluated together."""
    def __init__(self, buildings: Sequence[BuildingSegment]):
        self.buildings = list(buildings)
        if self.buildings:
            centers = np.array([b.center for b in self.buildings], dtype=float)
            lengths = np.array([b.length for b in self.buildings], dtype=float)
            orientations = np.array([b.orientation for b in self.buildings], dtype=float)
            self.near, self.far = geometry.segment_endpoints(centers, lengths, orientations)
        else:
            self.near = self.far = np.empty((0, 2))

    @classmethod
    def from_realization(cls, realization: BuildingRealization) -> "SegmentObstacle":
        return cls(realization.buildings)

    @property
    def count(self) -> int:
        return len(self.buildings)

    def crossings(self, users: np.ndarray) -> np.ndarray:
        return geometry.segment_crossings(users, self.near, self.far)
