# tests/test_process.py

import math

import numpy as np
import pytest
from scipy import stats

from aerolos.blockage_engine.models import BuildingProcessParams, FixedDistribution
from aerolos.blockage_engine.process import sample_buildings, sample_users

WINDOW = 103.5


def _params(density: float = 2e-4, **overrides) -> BuildingProcessParams:
    return BuildingProcessParams(density=density, sampling_window_radius=WINDOW, **overrides)


def test_zero_density_is_empty():
    realization = sample_buildings(_params(0.0), seed=3)
    assert realization.buildings == []
    assert realization.window_radius == WINDOW


def test_same_seed_same_realization():
    assert sample_buildings(_params(), seed=11, index=4) == sample_buildings(_params(), seed=11, index=4)
    assert sample_buildings(_params(), seed=11, index=4) != sample_buildings(_params(), seed=11, index=5)


def test_window_must_be_resolved():
    with pytest.raises(ValueError):
        sample_buildings(BuildingProcessParams(density=1e-4), seed=0)


@pytest.mark.slow
def test_building_count_is_poisson():
    counts = np.array([len(sample_buildings(_params(), seed=1, index=i).buildings) for i in range(10_000)])
    mean = 2e-4 * math.pi * WINDOW ** 2
    assert mean == pytest.approx(6.73, abs=0.01)
    assert abs(counts.mean() - mean) <= 3 * math.sqrt(mean / len(counts))

    # pooled tail keeps every expected cell count comfortably above 5
    top = 14
    observed = np.bincount(np.minimum(counts, top), minlength=top + 1)
    probabilities = stats.poisson.pmf(np.arange(top), mean)
    expected = len(counts) * np.append(probabilities, 1.0 - probabilities.sum())
    assert stats.chisquare(observed, expected).pvalue > 1e-3


def test_buildings_respect_window_and_distributions():
    buildings = [b for i in range(300) for b in sample_buildings(_params(5e-4), seed=2, index=i).buildings]
    assert len(buildings) > 1000
    assert all(b.distance <= WINDOW for b in buildings)
    lengths = np.array([b.length for b in buildings])
    orientations = np.array([b.orientation for b in buildings])
    assert lengths.min() > 0.0 and lengths.max() <= 15.0
    assert orientations.min() > 0.0 and orientations.max() <= math.pi
    assert stats.kstest(lengths, "uniform", args=(0.0, 15.0)).pvalue > 1e-3
    assert stats.kstest(orientations, "uniform", args=(0.0, math.pi)).pvalue > 1e-3


def test_fixed_distributions_are_point_masses():
    params = _params(5e-4, length_distribution=FixedDistribution(value=8.0),
                     orientation_distribution=FixedDistribution(value=1.0))
    buildings = sample_buildings(params, seed=5).buildings
    assert buildings
    assert {b.length for b in buildings} == {8.0}
    assert {b.orientation for b in buildings} == {1.0}


def test_no_building_contains_origin():
    params = _params(5e-4, length_distribution=FixedDistribution(value=15.0))
    for i in range(200):
        for b in sample_buildings(params, seed=9, index=i).buildings:
            assert not (b.distance * abs(math.cos(b.orientation)) <= 1e-9 and b.distance <= 7.5 + 1e-9)


def test_users_uniform_on_disk():
    users = sample_users(20_000, 96.0, seed=4)
    assert users.shape == (20_000, 2)
    radii = np.hypot(users[:, 0], users[:, 1])
    assert radii.max() <= 96.0
    # r^2 / Lambda^2 and the polar angle are both U(0, 1) for a uniform disk
    assert stats.kstest((radii / 96.0) ** 2, "uniform").pvalue > 1e-3
    angles = (np.arctan2(users[:, 1], users[:, 0]) + math.pi) / (2 * math.pi)
    assert stats.kstest(angles, "uniform").pvalue > 1e-3


def test_users_deterministic_and_validated():
    np.testing.assert_array_equal(sample_users(10, 50.0, seed=1, index=2), sample_users(10, 50.0, seed=1, index=2))
    with pytest.raises(ValueError):
        sample_users(0, 50.0, seed=1)
    with pytest.raises(ValueError):
        sample_users(10, 0.0, seed=1)
