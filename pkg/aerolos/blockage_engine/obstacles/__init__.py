# aerolos/blockage_engine/obstacles/__init__.py

from typing import Callable, Dict, Sequence, Type, Union

from pydantic import BaseModel

from aerolos.blockage_engine.models import BuildingSegment, DiskBuilding
from .base import BaseObstacle
from .stock.cylinder import CylinderObstacle
from .stock.segment import SegmentObstacle

Footprint = Union[BuildingSegment, DiskBuilding]

_REGISTRY: Dict[Type[BaseModel], Callable[[Sequence], BaseObstacle]] = {}


def register_obstacle(model_type: Type[BaseModel], factory: Callable[[Sequence], BaseObstacle]) -> None:
    """Maps a building model type to the obstacle that evaluates it; custom footprints plug in here."""
    _REGISTRY[model_type] = factory


def as_obstacle(building: Footprint) -> BaseObstacle:
    """Wraps one building model in its registered obstacle."""
    try:
        factory = _REGISTRY[type(building)]
    except KeyError:
        raise TypeError(f"no obstacle registered for {type(building).__name__}") from None
    return factory([building])


register_obstacle(BuildingSegment, SegmentObstacle)
register_obstacle(DiskBuilding, CylinderObstacle)

__all__ = ["BaseObstacle", "CylinderObstacle", "Footprint", "SegmentObstacle", "as_obstacle", "register_obstacle"]
