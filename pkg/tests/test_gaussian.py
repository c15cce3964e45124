import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cvclone.errors import DomainError
from cvclone.gaussian import (
    GaussianState,
    MeasurementOutcome,
    ModePartition,
    ThermalLossParams,
    apply_thermal_loss,
    coherent_state,
    condition_on_double_homodyne,
    displace,
    fidelity_to_coherent,
    partial_trace,
    ppt_min_symplectic,
    symplectic_eigenvalues,
    symplectic_form,
)


def thermal_state(mu):
    return GaussianState(1, np.zeros(2), (mu + 0.5) * np.eye(2))


def test_coherent_state_moments():
    state = coherent_state(1.0 + 2.0j)
    assert_allclose(state.mean, math.sqrt(2.0) * np.array([1.0, 2.0]))
    assert_allclose(state.cov, 0.5 * np.eye(2))


def test_symplectic_form_squares_to_minus_identity():
    omega = symplectic_form(3)
    assert_allclose(omega @ omega, -np.eye(6))


def test_symplectic_eigenvalues_of_thermal_product():
    cov = np.diag([0.5, 0.5, 1.7, 1.7, 3.2, 3.2])
    assert_allclose(sorted(symplectic_eigenvalues(cov)), [0.5, 1.7, 3.2])


def test_unphysical_covariance_rejected():
    with pytest.raises(DomainError):
        GaussianState(1, np.zeros(2), 0.3 * np.eye(2))


def test_thermal_loss_semigroup():
    state = coherent_state(0.7 - 0.4j)
    one_step = apply_thermal_loss(state, [ThermalLossParams(0.9, 0.3)])
    two_steps = apply_thermal_loss(
        apply_thermal_loss(state, [ThermalLossParams(0.5, 0.3)]),
        [ThermalLossParams(0.4, 0.3)])
    assert_allclose(two_steps.cov, one_step.cov, atol=1e-14)
    assert_allclose(two_steps.mean, one_step.mean, atol=1e-14)


def test_thermal_loss_fixed_point():
    mu = 0.8
    out = apply_thermal_loss(thermal_state(mu), [ThermalLossParams(2.3, mu)])
    assert_allclose(out.cov, (mu + 0.5) * np.eye(2), atol=1e-14)
    assert_allclose(out.mean, np.zeros(2))


def test_thermal_loss_requires_per_mode_params():
    with pytest.raises(DomainError):
        apply_thermal_loss(coherent_state(0.0),
                           [ThermalLossParams(0.1, 0.0)] * 2)


def test_displace_and_partial_trace():
    cov = np.diag([0.5, 0.5, 1.5, 1.5])
    state = GaussianState(2, np.array([1.0, 2.0, 3.0, 4.0]), cov)
    shifted = displace(state, [np.array([0.5, 0.0]), np.array([0.0, -1.0])])
    assert_allclose(shifted.mean, [1.5, 2.0, 3.0, 3.0])
    reduced = partial_trace(shifted, [1])
    assert reduced.n_modes == 1
    assert_allclose(reduced.mean, [3.0, 3.0])
    assert_allclose(reduced.cov, 1.5 * np.eye(2))


def test_conditioning_on_uncorrelated_mode_is_trivial():
    cov = np.diag([2.5, 2.5, 0.9, 0.9])
    state = GaussianState(2, np.array([0.3, -0.1, 1.0, 0.5]), cov)
    conditional, density = condition_on_double_homodyne(
        state, 0, 0.5 * np.eye(2), np.zeros(2),
        MeasurementOutcome((0.4, -0.2)))
    assert_allclose(conditional.cov, 0.9 * np.eye(2))
    assert_allclose(conditional.mean, [1.0, 0.5])
    assert density > 0


def test_outcome_density_normalizes():
    rng = np.random.default_rng(3)
    root = 0.4 * rng.normal(size=(4, 4))
    cov = root @ root.T + 0.6 * np.eye(4)
    state = GaussianState(2, 0.3 * rng.normal(size=4), cov)
    grid = np.linspace(-14.0, 14.0, 281)
    densities = np.array([
        [condition_on_double_homodyne(state, 0, 0.5 * np.eye(2),
                                      np.zeros(2),
                                      MeasurementOutcome((x, y)))[1]
         for y in grid]
        for x in grid])
    total = np.trapezoid(np.trapezoid(densities, grid, axis=1), grid)
    assert abs(total - 1.0) < 1e-6


def test_fidelity_between_coherent_states():
    state = coherent_state(0.3 + 0.9j)
    assert fidelity_to_coherent(state, 0.3 + 0.9j) == pytest.approx(1.0)
    delta = 0.5 - 0.2j
    expected = math.exp(-abs(delta) ** 2)
    assert fidelity_to_coherent(state, 0.3 + 0.9j + delta) == pytest.approx(
        expected, rel=1e-12)


def test_ppt_detects_no_entanglement_in_product_state():
    cov = np.diag([0.5, 0.5, 1.5, 1.5])
    state = GaussianState(2, np.zeros(4), cov)
    partition = ModePartition(frozenset({0}), frozenset({1}))
    assert ppt_min_symplectic(state, partition) >= 0.5 - 1e-12
