"""Optimizer tests: determinism, bounds, convergence to known peaks."""

import math

import numpy as np
import pytest

from relbell.errors import DomainError
from relbell.scenarios import (
    X_AXIS,
    com_boosts,
    epsilon2,
    epsilon3_com,
    mermin_collinear_settings,
)
from relbell.search import SearchConfig, optimize_chsh, optimize_mermin

ROOT8 = 2.0 * math.sqrt(2.0)

FAST_XY = SearchConfig(constraint="xy_plane", restarts=2,
                       grid_points_per_angle=8, seed=404,
                       refinement_tolerance=1e-7)
FAST_FREE = SearchConfig(constraint="free_sphere", restarts=2,
                         grid_points_per_angle=8, seed=404,
                         refinement_tolerance=1e-7)


def test_config_validation():
    with pytest.raises(DomainError):
        SearchConfig(constraint="banana")
    with pytest.raises(DomainError):
        SearchConfig(restarts=0)
    with pytest.raises(DomainError):
        SearchConfig(refinement_tolerance=0.0)
    with pytest.raises(DomainError):
        SearchConfig(objective="nonsense")


def test_beta_domain():
    with pytest.raises(DomainError):
        optimize_chsh((X_AXIS, X_AXIS), 1.0, FAST_XY)
    with pytest.raises(DomainError):
        optimize_mermin(com_boosts(), -0.1, FAST_XY)


def test_seeded_determinism():
    first_settings, first_value = optimize_chsh((X_AXIS, X_AXIS), 0.3, FAST_XY)
    second_settings, second_value = optimize_chsh((X_AXIS, X_AXIS), 0.3, FAST_XY)
    assert first_value == second_value
    for name in ("a", "a_prime", "b", "b_prime"):
        assert np.array_equal(getattr(first_settings, name),
                              getattr(second_settings, name))


def test_monotone_in_restarts():
    values = []
    for restarts in (1, 2, 4):
        config = SearchConfig(constraint="xy_plane", restarts=restarts,
                              grid_points_per_angle=8, seed=11,
                              refinement_tolerance=1e-7)
        values.append(optimize_chsh((X_AXIS, X_AXIS), 0.5, config)[1])
    assert values[0] <= values[1] <= values[2]


def test_chsh_free_sphere_is_boost_invariant():
    # The direction map is onto the sphere for beta < 1, so the free-sphere
    # optimum cannot depend on the speed.
    _, rest_value = optimize_chsh((X_AXIS, X_AXIS), 0.0, FAST_FREE)
    assert abs(rest_value - ROOT8) < 1e-5
    assert rest_value <= ROOT8 + 1e-9
    for beta in (0.3, 0.6, 0.9):
        _, value = optimize_chsh((X_AXIS, X_AXIS), beta, FAST_FREE)
        assert abs(value - rest_value) < 1e-5
        assert value <= ROOT8 + 1e-9


def test_chsh_xy_beats_collinear_curve():
    _, value = optimize_chsh((X_AXIS, X_AXIS), 0.8, FAST_XY)
    assert value >= epsilon2(0.8) - 1e-6
    assert value <= ROOT8 + 1e-9


def test_mermin_free_sphere_rest_frame():
    config = SearchConfig(constraint="free_sphere", restarts=1,
                          grid_points_per_angle=8, seed=7,
                          refinement_tolerance=1e-6)
    _, value = optimize_mermin((X_AXIS,) * 3, 0.0, config)
    assert abs(value - 4.0) < 1e-5
    assert value <= 4.0 + 1e-9


def test_mermin_xy_center_of_mass():
    config = SearchConfig(constraint="xy_plane", restarts=2,
                          grid_points_per_angle=8, seed=5,
                          refinement_tolerance=1e-7)
    _, value = optimize_mermin(com_boosts(), 0.6, config)
    assert value >= epsilon3_com(0.6) - 1e-6
    assert value <= 4.0 + 1e-9


def test_frozen_settings_zero_dimensional_search():
    frozen = mermin_collinear_settings(0.9)
    settings, value = optimize_mermin((X_AXIS,) * 3, 0.9, FAST_XY,
                                      frozen_settings=frozen)
    assert settings is frozen
    assert abs(value - 4.0) < 1e-10


def test_state_expectation_objective():
    config = SearchConfig(constraint="xy_plane", restarts=2,
                          grid_points_per_angle=8, seed=2,
                          refinement_tolerance=1e-7,
                          objective="state_expectation")
    _, value = optimize_chsh((X_AXIS, X_AXIS), 0.0, config)
    assert abs(value - ROOT8) < 1e-4
