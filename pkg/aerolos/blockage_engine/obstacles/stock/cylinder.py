# aerolos/blockage_engine/obstacles/stock/cylinder.py

from typing import Sequence

import numpy as np

from aerolos.blockage_engine import geometry
from aerolos.blockage_engine.models import DiskBuilding
from aerolos.blockage_engine.obstacles.base import BaseObstacle


class CylinderObstacle(BaseObstacle):
    """Cylindrical buildings with disk footprints; a user inside a footprint is blocked."""
    def __init__(self, buildings: Sequence[DiskBuilding]):
        self.buildings = list(buildings)
        self.centers = np.array([b.center for b in self.buildings], dtype=float).reshape(-1, 2)
        self.diameters = np.array([b.diameter for b in self.buildings], dtype=float)

    @property
    def count(self) -> int:
        return len(self.buildings)

    def crossings(self, users: np.ndarray) -> np.ndarray:
        return geometry.disk_crossings(users, self.centers, self.diameters)
