# aerolos/blockage_engine/scenario.py

from typing import Literal, Optional

from pydantic import Field, model_validator

from .geometry import effective_radius, max_range
from .models import (
    BuildingProcessParams,
    FrozenModel,
    LinkBudget,
    MonteCarloControls,
    QuadratureSpec,
    ScenarioHeights,
)

SweepVariable = Literal["lambda_b", "h_a", "h_b"]


class Scenario(FrozenModel):
    """
    The full experimental configuration: range, heights, building process,
    Monte Carlo controls and quadrature settings. Exactly one of `link_budget`
    and `r_max` is given.
    """
    link_budget: Optional[LinkBudget] = None
    r_max: Optional[float] = Field(None, gt=0.0)
    heights: ScenarioHeights
    process: BuildingProcessParams
    monte_carlo: MonteCarloControls = Field(default_factory=MonteCarloControls)
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)

    @model_validator(mode="after")
    def _consistent(self) -> "Scenario":
        if (self.link_budget is None) == (self.r_max is None):
            raise ValueError("exactly one of link_budget and r_max must be provided")
        radius = effective_radius(self.max_range, self.heights)
        window = self.process.sampling_window_radius
        if window is not None and window < self.process.minimum_window(radius):
            raise ValueError(
                f"sampling_window_radius {window:.6g} m is below Lambda_H + l_max/2 = "
                f"{self.process.minimum_window(radius):.6g} m"
            )
        return self

    @property
    def max_range(self) -> float:
        if self.r_max is not None:
            return self.r_max
        return max_range(self.link_budget)

    @property
    def effective_radius(self) -> float:
        return effective_radius(self.max_range, self.heights)

    @property
    def building_process(self) -> BuildingProcessParams:
        """Process parameters with the sampling window resolved to Lambda_H + l_max/2 when unset."""
        if self.process.sampling_window_radius is not None:
            return self.process
        window = self.process.minimum_window(self.effective_radius)
        return self.process.model_copy(update={"sampling_window_radius": window})

    def with_monte_carlo(self, **updates: Optional[int]) -> "Scenario":
        """A re-validated copy with Monte Carlo controls replaced; None values are ignored."""
        data = self.model_dump()
        data["monte_carlo"].update({k: v for k, v in updates.items() if v is not None})
        return Scenario.model_validate(data)

    def with_value(self, variable: SweepVariable, value: float) -> "Scenario":
        """A re-validated copy with one sweep variable replaced."""
        data = self.model_dump()
        if variable == "lambda_b":
            data["process"]["density"] = value
        elif variable == "h_a":
            data["heights"]["aap_altitude"] = value
        elif variable == "h_b":
            data["heights"]["building_height"] = value
        else:
            raise ValueError(f"unknown sweep variable '{variable}'")
        return Scenario.model_validate(data)
