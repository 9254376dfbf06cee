# scripts/run_gain_profile.py

import csv
import logging
import math
import sys

import numpy as np

from aerolos.blockage_engine import geometry
from aerolos.blockage_engine.models import BuildingSegment, ScenarioHeights
from aerolos.config.logging_setup import configure_logging

logger = logging.getLogger("aerolos.scripts.gain_profile")

# Reference building and heights of the altitude study.
BUILDING = BuildingSegment(center=(25.0, 0.0), length=6.0, orientation=math.pi / 4)
R_MAX = 100.0
H_B = 30.0
H_U = 2.0
ALTITUDES = np.arange(31.0, 101.0, 1.0)


def main():
    configure_logging("INFO")
    logger.info("--- Coverage gain and its bounds over H_a (%d altitudes) ---", len(ALTITUDES))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["h_a", "s_gain_lower", "s_gain", "s_gain_upper"])

    violations = 0
    gains = []
    for altitude in ALTITUDES:
        heights = ScenarioHeights(aap_altitude=float(altitude), user_height=H_U, building_height=H_B)
        radius = geometry.effective_radius(R_MAX, heights)
        gain = geometry.coverage_gain_exact(BUILDING, heights, radius)
        lower, upper = geometry.coverage_gain_bounds(BUILDING, heights, radius)
        violations += int(not lower <= gain <= upper)
        gains.append(gain)
        writer.writerow([f"{v:.9g}" for v in (altitude, lower, gain, upper)])

    steps = np.sign(np.diff(gains)[np.abs(np.diff(gains)) > 1e-6])
    sign_changes = int(np.count_nonzero(np.diff(steps)))
    best = float(ALTITUDES[int(np.argmax(gains))])
    logger.info("Sandwich violations: %d, sign changes of the gain: %d, peak at H_a = %.0f m",
                violations, sign_changes, best)
    if violations or sign_changes > 1:
        logger.error("🛑 Gain profile check failed.")
        sys.exit(1)
    logger.info("✅ Gain profile check passed.")


if __name__ == "__main__":
    main()
