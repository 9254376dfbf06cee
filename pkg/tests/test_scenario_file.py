# tests/test_scenario_file.py

import math

import pytest

from aerolos.blockage_engine.errors import ConfigParseError, ConfigValidationError
from aerolos.blockage_engine.models import FixedDistribution, UniformDistribution
from aerolos.config.scenario_file import parse_config, parse_entries
from aerolos.config.settings import settings


def test_empty_file_gives_reference_defaults(write_config):
    scenario = parse_config(write_config(""))
    assert scenario.r_max == 100.0 and scenario.link_budget is None
    assert scenario.heights.aap_altitude == 50.0
    assert scenario.heights.building_height == 30.0
    assert scenario.heights.user_height == 2.0
    assert scenario.process.density == 2e-4
    assert scenario.process.length_distribution == UniformDistribution(low=0.0, high=15.0)
    assert scenario.process.orientation_distribution == UniformDistribution(low=0.0, high=math.pi)
    assert scenario.monte_carlo.realizations == settings.realizations
    assert scenario.monte_carlo.seed == settings.seed
    assert scenario.quadrature.relative_tolerance == 1e-6


def test_comments_and_blank_lines_are_ignored(write_config):
    scenario = parse_config(write_config("# urban\n\nh_a = 60   # meters\n  lambda_b=1e-4\n"))
    assert scenario.heights.aap_altitude == 60.0
    assert scenario.process.density == 1e-4


def test_empty_disk_is_a_validation_error(write_config):
    with pytest.raises(ConfigValidationError, match="empty"):
        parse_config(write_config("h_a = 1000\n"))


def test_negative_density_is_a_validation_error(write_config):
    with pytest.raises(ConfigValidationError, match="density"):
        parse_config(write_config("lambda_b = -1\n"))


@pytest.mark.parametrize("text, line", [
    ("h_a = 40\ncolour = blue\n", 2),
    ("# header\n\nh_a 40\n", 3),
    ("h_a = forty\n", 1),
    ("seed = 1.5\n", 1),
    ("len_dist = normal\n", 1),
    ("h_a = 40\nh_a = 41\n", 2),
])
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(ConfigParseError) as excinfo:
        parse_entries(text.splitlines())
    assert excinfo.value.line_number == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_link_budget_replaces_r_max(write_config):
    text = "beam_gain = 1e4\nnormalized_noise = 1\nsnr_threshold = 1\npathloss_exponent = 2\n"
    scenario = parse_config(write_config(text))
    assert scenario.r_max is None
    assert scenario.max_range == pytest.approx(100.0)


def test_link_budget_and_r_max_conflict(write_config):
    text = "r_max = 100\nbeam_gain = 1e4\nnormalized_noise = 1\nsnr_threshold = 1\npathloss_exponent = 2\n"
    with pytest.raises(ConfigValidationError, match="not both"):
        parse_config(write_config(text))


def test_partial_link_budget(write_config):
    with pytest.raises(ConfigValidationError, match="pathloss_exponent"):
        parse_config(write_config("beam_gain = 1e4\nnormalized_noise = 1\nsnr_threshold = 1\n"))


def test_fixed_distributions(write_config):
    scenario = parse_config(write_config(
        "len_dist = fixed\nlen_value = 8\norientation_dist = fixed\norientation_value = 1.2\n"
    ))
    assert scenario.process.length_distribution == FixedDistribution(value=8.0)
    assert scenario.process.orientation_distribution == FixedDistribution(value=1.2)


def test_fixed_distribution_needs_its_value(write_config):
    with pytest.raises(ConfigValidationError, match="len_value"):
        parse_config(write_config("len_dist = fixed\n"))
    with pytest.raises(ConfigValidationError, match="len_value"):
        parse_config(write_config("len_value = 8\n"))


def test_orientation_support_is_checked(write_config):
    with pytest.raises(ConfigValidationError):
        parse_config(write_config("orientation_max = 4\n"))


def test_window_must_cover_padded_disk(write_config):
    with pytest.raises(ConfigValidationError, match="sampling_window_radius"):
        parse_config(write_config("window_radius = 50\n"))
    scenario = parse_config(write_config("window_radius = 200\n"))
    assert scenario.building_process.sampling_window_radius == 200.0


def test_window_defaults_to_padded_disk(write_config):
    scenario = parse_config(write_config("h_a = 30\n"))
    assert scenario.effective_radius == pytest.approx(96.0)
    assert scenario.building_process.sampling_window_radius == pytest.approx(103.5)


def test_with_value_revalidates(write_config):
    scenario = parse_config(write_config(""))
    assert scenario.with_value("h_b", 35.0).heights.building_height == 35.0
    assert scenario.with_value("lambda_b", 1e-5).process.density == 1e-5
    with pytest.raises(ValueError):
        scenario.with_value("h_a", 1.0)
