# aerolos/blockage_engine/models.py

import math
from typing import Annotated, Callable, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import integrate

from .errors import QuadratureNonConvergenceError

Point2D = Tuple[float, float]


class FrozenModel(BaseModel):
    """Immutable record; every domain type of the engine is a value object."""
    model_config = ConfigDict(frozen=True)


# --- Link budget & heights ---

class LinkBudget(FrozenModel):
    """Normalized transmit parameters of the AAP. P only enters through `normalized_noise`."""
    beam_gain: float = Field(..., gt=0.0, description="Beamforming gain G, linear.")
    normalized_noise: float = Field(..., gt=0.0, description="Thermal noise power over transmit power, sigma^2/P.")
    snr_threshold: float = Field(..., gt=0.0, description="SNR threshold gamma, linear.")
    pathloss_exponent: float = Field(..., ge=1.0, description="Path-loss exponent alpha.")

    @model_validator(mode="after")
    def _range_is_finite(self) -> "LinkBudget":
        ratio = self.beam_gain / (self.normalized_noise * self.snr_threshold)
        try:
            r_max = ratio ** (1.0 / self.pathloss_exponent)
        except OverflowError:
            r_max = math.inf
        if not (math.isfinite(r_max) and r_max > 0.0):
            raise ValueError("derived R_max must be positive and finite")
        return self


class ScenarioHeights(FrozenModel):
    """Heights in meters. Users never stand above rooftops or above the AAP."""
    aap_altitude: float = Field(..., ge=0.0)
    user_height: float = Field(0.0, ge=0.0)
    building_height: float = Field(..., ge=0.0)

    @model_validator(mode="after")
    def _ordering(self) -> "ScenarioHeights":
        if self.aap_altitude < self.user_height:
            raise ValueError("aap_altitude must not be below user_height (H_a >= H_u)")
        if self.building_height < self.user_height:
            raise ValueError("building_height must not be below user_height (H_b >= H_u)")
        return self

    @property
    def aap_above_rooftop(self) -> bool:
        return self.aap_altitude > self.building_height

    @property
    def omega_h(self) -> Optional[float]:
        """Shadow-stretch factor (1 - (H_b - H_u)/(H_a - H_u))^-1, defined only for H_a > H_b."""
        if not self.aap_above_rooftop:
            return None
        return (self.aap_altitude - self.user_height) / (self.aap_altitude - self.building_height)

    @property
    def clearance_ratio(self) -> float:
        """
        Fraction t of a link (measured from the AAP) beyond which the link is
        at or below rooftop height. A crossing at t >= clearance_ratio blocks.
        """
        if not self.aap_above_rooftop:
            return 0.0
        return (self.aap_altitude - self.building_height) / (self.aap_altitude - self.user_height)


# --- Buildings ---

class BuildingSegment(FrozenModel):
    """
    A building as a 2D line segment at the global height H_b.

    `orientation` is measured from the normal of the line o-x, so the endpoint
    nearer to o sits at distance sqrt(l^2/4 + d_x^2 - d_x*l*sin(omega)).
    A zero length is accepted as the point-obstacle limit.
    """
    center: Point2D
    length: float = Field(..., ge=0.0)
    orientation: float = Field(..., gt=0.0, le=math.pi)

    @property
    def distance(self) -> float:
        return math.hypot(*self.center)


class DiskBuilding(FrozenModel):
    """A cylindrical building whose footprint is a disk of the given diameter."""
    center: Point2D
    diameter: float = Field(..., ge=0.0)

    @property
    def distance(self) -> float:
        return math.hypot(*self.center)


class BlockageAngles(FrozenModel):
    """Derived per-building geometry (distances in meters, angles in radians)."""
    d_x: float
    d_s: float
    d_l: float
    d_min: float = Field(..., description="True shortest distance from o to the segment.")
    theta: float
    beta: float
    omega_h: Optional[float] = None


# --- Quadrature ---

class QuadratureSpec(FrozenModel):
    relative_tolerance: float = Field(1e-6, gt=0.0)
    absolute_tolerance: float = Field(1e-9, gt=0.0)
    max_subdivisions: int = Field(200, ge=1)

    def integrate(self, fn: Callable[[float], float], low: float, high: float,
                  points: Optional[Sequence[float]] = None) -> float:
        """
        Adaptive quadrature of `fn` over [low, high].

        Raises:
            QuadratureNonConvergenceError: if the subdivision limit is exhausted.
        """
        if high <= low:
            return 0.0
        breaks = [p for p in (points or ()) if low < p < high] or None
        result = integrate.quad(
            fn, low, high,
            epsabs=self.absolute_tolerance,
            epsrel=self.relative_tolerance,
            limit=self.max_subdivisions,
            points=breaks,
            full_output=1,
        )
        if len(result) > 3 and str(result[3]).startswith("The maximum number of subdivisions"):
            raise QuadratureNonConvergenceError(
                f"quadrature over [{low:.6g}, {high:.6g}] exceeded {self.max_subdivisions} subdivisions"
            )
        return float(result[0])


# --- Distributions of building length and orientation ---

class UniformDistribution(FrozenModel):
    """Uniform on the half-open interval (low, high]."""
    kind: Literal["uniform"] = "uniform"
    low: float = Field(..., ge=0.0)
    high: float

    @model_validator(mode="after")
    def _ordered(self) -> "UniformDistribution":
        if not self.high > self.low:
            raise ValueError("uniform distribution needs high > low")
        return self

    @property
    def upper(self) -> float:
        return self.high

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        # high - width*U with U in [0, 1) lands in (low, high]
        return self.high - (self.high - self.low) * rng.random(size)

    def expectation(self, fn: Callable[[float], float], quad: QuadratureSpec,
                    points: Optional[Sequence[float]] = None) -> float:
        return quad.integrate(fn, self.low, self.high, points) / (self.high - self.low)


class FixedDistribution(FrozenModel):
    """Point mass; its integral dimension collapses to one evaluation."""
    kind: Literal["fixed"] = "fixed"
    value: float = Field(..., ge=0.0)

    @property
    def upper(self) -> float:
        return self.value

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.full(size, self.value, dtype=float)

    def expectation(self, fn: Callable[[float], float], quad: QuadratureSpec,
                    points: Optional[Sequence[float]] = None) -> float:
        return float(fn(self.value))


Distribution = Annotated[Union[UniformDistribution, FixedDistribution], Field(discriminator="kind")]


# --- Building process ---

class BuildingProcessParams(FrozenModel):
    """Boolean line-segment process: PPP centers, i.i.d. lengths and orientations."""
    density: float = Field(..., ge=0.0, description="lambda_b, buildings per m^2.")
    length_distribution: Distribution = Field(default_factory=lambda: UniformDistribution(low=0.0, high=15.0))
    orientation_distribution: Distribution = Field(
        default_factory=lambda: UniformDistribution(low=0.0, high=math.pi)
    )
    sampling_window_radius: Optional[float] = Field(
        None, gt=0.0, description="Radius of the sampling disk; resolved from Lambda_H when omitted."
    )

    @model_validator(mode="after")
    def _orientation_support(self) -> "BuildingProcessParams":
        dist = self.orientation_distribution
        if isinstance(dist, FixedDistribution) and not 0.0 < dist.value <= math.pi:
            raise ValueError("fixed orientation must lie in (0, pi]")
        if isinstance(dist, UniformDistribution) and dist.high > math.pi:
            raise ValueError("orientation distribution must be supported on (0, pi]")
        return self

    def minimum_window(self, effective_radius: float) -> float:
        return effective_radius + self.length_distribution.upper / 2.0


class BuildingRealization(FrozenModel):
    buildings: List[BuildingSegment] = Field(default_factory=list)
    seed: int = Field(..., ge=0, lt=2**64)
    window_radius: float = Field(..., gt=0.0)


# --- Estimates & results ---

class ConnectivityEstimate(FrozenModel):
    p_c_hat: float = Field(..., ge=0.0, le=1.0)
    standard_error: float = Field(..., ge=0.0)
    n_realizations: int = Field(..., ge=1)
    users_per_realization: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)


class AreaEstimate(FrozenModel):
    area_hat: float = Field(..., ge=0.0)
    standard_error: float = Field(..., ge=0.0)
    n_samples: int = Field(..., ge=1)


class BoundResult(FrozenModel):
    p_c_lower: float = Field(..., ge=0.0, le=1.0)
    raw_value: float
    mean_blocked_area: float = Field(..., description="Overlap-ignoring expected blocked area, m^2.")
    clipped: bool = False


class AltitudePoint(FrozenModel):
    aap_altitude: float
    p_c_lower: Optional[float] = None
    error: Optional[str] = None


class AltitudeSweep(FrozenModel):
    points: List[AltitudePoint]
    best_altitude: Optional[float] = None
    best_p_c_lower: Optional[float] = None


class MonteCarloControls(FrozenModel):
    realizations: int = Field(2000, ge=1)
    users_per_realization: int = Field(500, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)


class SweepRow(FrozenModel):
    """One grid point of a paired Monte Carlo / bound sweep."""
    value: float
    p_c_hat: Optional[float] = None
    standard_error: Optional[float] = None
    p_c_lower: Optional[float] = None
    error: Optional[str] = None
