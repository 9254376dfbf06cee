# scripts/verify_oracles.py

import logging
import math
import sys

import numpy as np

from aerolos.blockage_engine import geometry
from aerolos.blockage_engine.models import BuildingSegment, ScenarioHeights
from aerolos.blockage_engine.montecarlo import gain_area_oracle, shadow_area_oracle
from aerolos.config.logging_setup import configure_logging
from aerolos.config.settings import settings

logger = logging.getLogger("aerolos.scripts.verify_oracles")

CONFIGURATIONS = 200
ALTITUDE_TRIPLES = 50
TOLERATED_VIOLATIONS = 2
R_MAX = 100.0


def random_configuration(rng: np.random.Generator):
    h_u = rng.uniform(0.0, 5.0)
    h_b = rng.uniform(h_u + 5.0, 50.0)
    h_a = rng.uniform(h_b + 1.0, 90.0)
    heights = ScenarioHeights(aap_altitude=h_a, user_height=h_u, building_height=h_b)
    radius = geometry.effective_radius(R_MAX, heights)
    length = rng.uniform(1.0, 15.0)
    d_x = rng.uniform(length / 2 + 1.0, radius - length / 2 - 1.0)
    angle = rng.uniform(0.0, 2 * math.pi)
    building = BuildingSegment(center=(d_x * math.cos(angle), d_x * math.sin(angle)), length=length,
                               orientation=rng.uniform(1e-3, math.pi))
    return building, heights, radius


def check_areas(rng: np.random.Generator) -> bool:
    logger.info("[PHASE 1/2] Comparing closed-form areas with %d oracle runs of %d samples...",
                CONFIGURATIONS, settings.oracle_samples)
    shadow_misses = gain_misses = 0
    for i in range(CONFIGURATIONS):
        building, heights, radius = random_configuration(rng)
        shadow = shadow_area_oracle(building, heights, radius, settings.oracle_samples, seed=2 * i)
        gain = gain_area_oracle(building, heights, radius, settings.oracle_samples, seed=2 * i + 1)
        exact_shadow = geometry.shadow_area_exact(building, heights, radius)
        exact_gain = geometry.coverage_gain_exact(building, heights, radius)
        shadow_misses += int(abs(exact_shadow - shadow.area_hat) > 3 * shadow.standard_error)
        gain_misses += int(abs(exact_gain - gain.area_hat) > 3 * gain.standard_error)
    logger.info("  - 3-sigma misses: shadow %d, gain %d", shadow_misses, gain_misses)
    return shadow_misses <= TOLERATED_VIOLATIONS and gain_misses <= TOLERATED_VIOLATIONS


def check_altitudes(rng: np.random.Generator) -> bool:
    logger.info("[PHASE 2/2] Comparing the closed-form altitude with a %.2f m grid search...",
                settings.altitude_grid_step)
    checked, worst = 0, 0.0
    while checked < ALTITUDE_TRIPLES:
        h_u = rng.uniform(0.0, 5.0)
        h_b = rng.uniform(h_u + 5.0, 40.0)
        heights = ScenarioHeights(aap_altitude=h_b, user_height=h_u, building_height=h_b)
        d_l = rng.uniform(1.0, 40.0)
        if not geometry.has_interior_optimum(d_l, heights, R_MAX):
            continue
        closed = geometry.optimal_altitude(d_l, heights)
        searched = geometry.grid_search_altitude(d_l, heights, R_MAX, settings.altitude_grid_step)
        worst = max(worst, abs(closed - searched))
        checked += 1
    logger.info("  - largest |H_a* - grid argmax| = %.4f m", worst)
    return worst <= 0.05


def main():
    configure_logging("INFO")
    rng = np.random.default_rng(20240601)
    results = [check_areas(rng), check_altitudes(rng)]
    if not all(results):
        logger.error("🛑 Oracle verification failed.")
        sys.exit(1)
    logger.info("🎉 --- All oracle checks passed! --- 🎉")


if __name__ == "__main__":
    main()
