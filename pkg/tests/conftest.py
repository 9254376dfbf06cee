# tests/conftest.py

import math
from pathlib import Path

import pytest

from aerolos.blockage_engine.models import BuildingSegment, ScenarioHeights
from aerolos.config.scenario_file import build_scenario

GOLDEN_DIR = Path(__file__).parent / "golden"


def pytest_addoption(parser):
    parser.addoption("--update-golden", action="store_true", default=False,
                     help="Rewrite tests/golden files from the current CLI output.")


@pytest.fixture
def reference_building() -> BuildingSegment:
    """The altitude-study building: d_x = 25 m, l = 6 m, omega = pi/4."""
    return BuildingSegment(center=(25.0, 0.0), length=6.0, orientation=math.pi / 4)


@pytest.fixture
def rooftop_heights() -> ScenarioHeights:
    """AAP level with the rooftops: no coverage gain, Lambda_H = 96 m for R_max = 100 m."""
    return ScenarioHeights(aap_altitude=30.0, user_height=2.0, building_height=30.0)


@pytest.fixture
def raised_heights() -> ScenarioHeights:
    """Omega_H = 2 and Lambda_H^2 = 6864 m^2 for R_max = 100 m."""
    return ScenarioHeights(aap_altitude=58.0, user_height=2.0, building_height=30.0)


@pytest.fixture
def small_scenario():
    """Reference urban scenario with Monte Carlo counts small enough for unit tests."""
    return build_scenario({"realizations": 40, "users_per_realization": 200, "seed": 7})


@pytest.fixture
def write_config(tmp_path):
    def _write(text: str):
        path = tmp_path / "scenario.cfg"
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def golden(request):
    """
    Compares CLI output byte for byte with tests/golden/<name>.

    A missing file is recorded from the current output and the test is
    skipped once; --update-golden rewrites every file.
    """
    update = request.config.getoption("--update-golden")

    def _check(name: str, text: str):
        path = GOLDEN_DIR / name
        if update or not path.exists():
            recorded = path.exists()
            path.write_bytes(text.encode("utf-8"))
            if not (update or recorded):
                pytest.skip(f"recorded new golden file {name}")
            return
        assert text == path.read_bytes().decode("utf-8")
    return _check
