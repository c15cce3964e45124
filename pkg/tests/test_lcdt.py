import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cvclone.errors import DomainError
from cvclone.gaussian import coherent_state
from cvclone.lcdt import (
    GaussianAlphabet,
    LcdtConfig,
    admissible_amplitude_sq,
    apply_cloning_map,
    averaged_fidelity,
    averaged_fidelity_quadrature,
    lcdt_fidelity,
    lcdt_fidelity_pipeline,
    omega_thresholds,
    optimize_cloner_location,
    scan_cloner_location,
    stationary_tauc,
)


def test_cloning_map_adds_symmetric_noise():
    cloned = apply_cloning_map(coherent_state(1.0j), 3)
    assert_allclose(cloned.cov, (0.5 + 2.0 / 3.0) * np.eye(2))
    assert_allclose(cloned.mean, coherent_state(1.0j).mean)


def test_closed_form_matches_pipeline():
    rng = np.random.default_rng(8)
    for _ in range(50):
        m = int(rng.integers(2, 7))
        tau = float(rng.uniform(0.05, 3.0))
        tau0 = float(rng.uniform(0.0, 1.0)) * tau
        mu = float(rng.uniform(0.0, 2.0))
        alpha = complex(rng.normal(), rng.normal())
        config = LcdtConfig(m, tau0, tau - tau0, mu)
        assert lcdt_fidelity(config, alpha) == pytest.approx(
            lcdt_fidelity_pipeline(config, alpha), abs=1e-12)


def test_lossless_cloner_at_sender_reaches_cloning_bound():
    config = LcdtConfig(2, 0.0, 0.0, 0.0)
    assert lcdt_fidelity(config, 3.0 - 1.0j) == pytest.approx(2.0 / 3.0)


def test_small_amplitudes_favor_cloning_at_the_sender():
    m, tau, mu = 2, 1.0, 0.0
    crit = admissible_amplitude_sq(m, tau, mu)
    for frac in (0.0, 0.5, 1.0):
        alpha = math.sqrt(frac * crit)
        placement = optimize_cloner_location(m, tau, mu, alpha)
        assert not placement.interior
        assert placement.tau_c_opt == pytest.approx(tau)
        best_tauc, _ = scan_cloner_location(m, tau, mu, alpha)
        assert best_tauc == pytest.approx(tau, abs=2e-3)


def test_large_amplitude_has_stationary_optimum():
    m, tau, mu = 2, 1.0, 0.0
    placement = optimize_cloner_location(m, tau, mu, 10.0)
    assert placement.interior
    assert placement.tau_c_opt == pytest.approx(
        stationary_tauc(m, tau, mu, 100.0), abs=1e-12)
    assert placement.f_at_opt < 1.0 / math.e
    # at the stationary point F = exp(-1) / c with c the amplitude term
    c = (1.0 - math.exp(-tau / 2.0)) ** 2 * 100.0
    assert placement.f_at_opt == pytest.approx(math.exp(-1.0) / c, rel=1e-12)


def test_averaged_fidelity_matches_quadrature():
    for m, tau, mu, w2 in ((2, 0.7, 0.0, 1.0), (3, 1.5, 0.4, 4.0),
                           (2, 0.3, 1.0, 0.25)):
        alphabet = GaussianAlphabet(w2)
        closed = averaged_fidelity(m, tau, mu, alphabet)
        quad = averaged_fidelity_quadrature(m, tau, mu, alphabet)
        assert closed == pytest.approx(quad, abs=1e-8)


def test_zero_width_alphabet_recovers_vacuum_fidelity():
    m, tau, mu = 2, 0.9, 0.3
    closed = averaged_fidelity(m, tau, mu, GaussianAlphabet(0.0))
    assert closed == pytest.approx(
        lcdt_fidelity(LcdtConfig(m, 0.0, tau, mu), 0.0), abs=1e-12)


def test_omega_threshold_known_point():
    th = omega_thresholds(2, math.log(2.0), 0.7)
    assert th.omega_a_sq == pytest.approx((3.0 + 2.0 * math.sqrt(2.0)) / 2.0,
                                          rel=1e-12)
    # mu-independence of the weak-source threshold
    th0 = omega_thresholds(2, math.log(2.0), 0.0)
    assert th0.omega_a_sq == pytest.approx(th.omega_a_sq, rel=1e-12)


def test_omega_c_only_in_strong_source_window():
    inside = omega_thresholds(2, 1.0, 0.2)
    assert inside.omega_c_sq is not None and inside.omega_c_sq > 0
    outside = omega_thresholds(2, 0.3, 0.2)
    assert outside.omega_c_sq is None


def test_domain_validation():
    with pytest.raises(DomainError):
        LcdtConfig(1, 0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        GaussianAlphabet(-1.0)
    with pytest.raises(DomainError):
        apply_cloning_map(coherent_state(0.0), 1)
