# aerolos/blockage_engine/orchestrator.py

import logging
from typing import List, Optional, Sequence

from pydantic import ValidationError

from .analytic import connectivity_lower_bound
from .errors import AerolosError, describe_error
from .models import SweepRow
from .montecarlo import estimate_connectivity
from .scenario import Scenario, SweepVariable

logger = logging.getLogger(__name__)


class SweepOrchestrator:
    """
    Runs the paired experiment of a sweep: for every grid value, a Monte Carlo
    estimate of p_c next to the analytic lower bound p_c^(-).

    Realizations inside each point are spread over `threads` workers; points
    are processed in grid order, so rows come back in grid order.
    """

    def __init__(self, scenario: Scenario, variable: SweepVariable, threads: int = 1,
                 seed: Optional[int] = None):
        self.scenario = scenario
        self.variable = variable
        self.threads = max(1, threads)
        self.seed = seed

    def run(self, grid: Sequence[float]) -> List[SweepRow]:
        """One row per grid value. A failing point is logged and marked, the loop continues."""
        total = len(grid)
        logger.info("--- Sweeping %s over %d point(s) ---", self.variable, total)
        rows = []
        for i, value in enumerate(grid):
            logger.info("[POINT %d/%d] %s = %.6g", i + 1, total, self.variable, value)
            rows.append(self._run_point(value))
        succeeded = sum(1 for row in rows if row.error is None)
        logger.info("✅ Sweep finished: %d/%d point(s) succeeded.", succeeded, total)
        return rows

    def _run_point(self, value: float) -> SweepRow:
        try:
            scenario = self.scenario.with_value(self.variable, value)
            estimate = estimate_connectivity(scenario, seed=self.seed, threads=self.threads)
            bound = connectivity_lower_bound(scenario)
        except (AerolosError, ValidationError, ValueError) as exc:
            message = describe_error(exc)
            logger.warning("  - 🛑 %s = %.6g failed: %s", self.variable, value, message)
            return SweepRow(value=value, error=message)
        return SweepRow(
            value=value,
            p_c_hat=estimate.p_c_hat,
            standard_error=estimate.standard_error,
            p_c_lower=bound.p_c_lower,
        )
