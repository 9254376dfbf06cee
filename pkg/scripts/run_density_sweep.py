# scripts/run_density_sweep.py

import logging
import sys

from aerolos.blockage_engine.orchestrator import SweepOrchestrator
from aerolos.cli import SWEEP_COLUMNS, CsvEmitter
from aerolos.config.logging_setup import configure_logging
from aerolos.config.scenario_file import default_scenario
from aerolos.config.settings import settings

logger = logging.getLogger("aerolos.scripts.density_sweep")

DENSITIES = [1e-5, 5e-5, 1e-4, 2e-4, 5e-4]


def non_increasing(rows) -> bool:
    """Simulated curve may rise by at most 3 sigma between neighbours; the bound may not rise at all."""
    for prev, cur in zip(rows, rows[1:]):
        sigma = max(prev.standard_error, cur.standard_error)
        if cur.p_c_hat > prev.p_c_hat + 3 * sigma or cur.p_c_lower > prev.p_c_lower:
            return False
    return True


def main():
    configure_logging("INFO")
    scenario = default_scenario().with_monte_carlo(realizations=2000, users_per_realization=500)
    logger.info("--- Connectivity vs building density: %d realizations x %d users ---",
                scenario.monte_carlo.realizations, scenario.monte_carlo.users_per_realization)

    rows = SweepOrchestrator(scenario, "lambda_b", threads=settings.threads).run(DENSITIES)

    emitter = CsvEmitter(sys.stdout, ["lambda_b", *SWEEP_COLUMNS])
    for row in rows:
        emitter.row(row.value, row.p_c_hat, row.standard_error, row.p_c_lower, row.error)

    if len(rows) != len(DENSITIES) or any(row.error is not None for row in rows):
        logger.error("🛑 Density sweep check failed: some points did not run.")
        sys.exit(1)
    invalid = [row.value for row in rows if row.p_c_lower > row.p_c_hat + 3 * row.standard_error]
    monotone = non_increasing(rows)
    gaps = [row.p_c_hat - row.p_c_lower for row in rows]
    logger.info("Bound violations: %s; monotone: %s; gap at lowest density %.4f, at highest %.4f",
                invalid or "none", monotone, gaps[0], gaps[-1])
    if invalid or not monotone or not gaps[0] < gaps[-1]:
        logger.error("🛑 Density sweep check failed.")
        sys.exit(1)
    logger.info("✅ Density sweep check passed.")


if __name__ == "__main__":
    main()
