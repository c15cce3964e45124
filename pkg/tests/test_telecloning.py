import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cvclone.errors import DomainError
from cvclone.source import Sum1Params
from cvclone.telecloning import (
    TelecloningConfig,
    clone_fidelity_closed,
    fidelity_regime_a,
    fidelity_regime_c,
    monte_carlo_protocol,
    numeric_optimal,
    optimal_symmetric,
    symmetric_fidelity,
    telecloning_pipeline,
    useful_time_thresholds,
)


def test_lossless_optimum_saturates_cloning_bound():
    for m in (2, 3, 5):
        best = optimal_symmetric(m, 0.25, 0.0)
        assert best.f_max == pytest.approx(m / (2.0 * m - 1.0), abs=1e-12)
        assert best.regime == "A"


def test_pipeline_matches_closed_form():
    config = TelecloningConfig(Sum1Params((0.8, 0.3, 1.1)), 0.4, 0.7, 0.25)
    results = telecloning_pipeline(config, 0.6 - 1.1j)
    for h, res in enumerate(results, start=1):
        closed = clone_fidelity_closed(config, h)
        assert res.fidelity == pytest.approx(closed, abs=1e-12)


def test_fidelity_is_amplitude_independent():
    config = TelecloningConfig.symmetric(2, 0.9, 0.3, 0.5, 0.1)
    fids = [telecloning_pipeline(config, a)[0].fidelity
            for a in (0.0, 2.0 + 1.0j, -5.0j)]
    assert max(fids) - min(fids) < 1e-12


def test_clone_mean_reproduces_input():
    alpha = 1.0 + 2.0j
    config = TelecloningConfig.symmetric(2, 1.5, 0.2, 0.4, 0.3)
    res = telecloning_pipeline(config, alpha)[0]
    assert_allclose(res.clone_mean,
                    math.sqrt(2.0) * np.array([alpha.real, alpha.imag]))


def test_symmetric_fidelity_agrees_with_general_form():
    for n in (0.0, 0.4, 3.0, 1e9):
        stable = symmetric_fidelity(3, n, 0.5, 1.2, 0.6)
        cfg = TelecloningConfig.symmetric(3, n, 0.5, 0.7, 0.6)
        if n <= 3.0:
            assert stable == pytest.approx(clone_fidelity_closed(cfg, 1),
                                           abs=1e-12)
        assert 0.0 < stable < 1.0


def test_regime_boundary_is_continuous():
    for m, mu in ((2, 0.0), (2, 0.2), (3, 0.2)):
        tau = math.log(m)
        assert fidelity_regime_a(m, tau, mu) == pytest.approx(
            fidelity_regime_c(m, tau, mu), abs=1e-12)


@pytest.mark.parametrize("m,tau,mu,regime", [
    (2, 0.3, 0.0, "A"),
    (2, 1.0, 0.2, "C"),
    (3, 2.0, 0.5, "B"),
    (5, 3.0, 2.0, "B"),
    (2, 2.0, 0.3, "C"),
])
def test_closed_optimum_matches_numeric_search(m, tau, mu, regime):
    closed = optimal_symmetric(m, tau, mu)
    numeric = numeric_optimal(m, tau, mu)
    assert closed.regime == regime
    assert numeric.f_max == pytest.approx(closed.f_max, abs=1e-9)
    assert numeric.tau0_opt == pytest.approx(closed.tau0_opt, abs=1e-6)
    if math.isfinite(closed.n_opt):
        assert numeric.n_opt == pytest.approx(closed.n_opt, rel=1e-4)
    else:
        assert not math.isfinite(numeric.n_opt) or numeric.n_opt > 1e6


def test_strong_source_regime_prefers_balanced_split():
    best = optimal_symmetric(2, 1.0, 0.2)
    assert best.regime == "C"
    assert math.isinf(best.n_opt)
    assert best.tau0_opt == pytest.approx(0.5 * (1.0 + math.log(2.0)))


def test_useful_time_thresholds():
    # lossless environment: never drops below the classical limit
    assert useful_time_thresholds(4, 0.0) == (math.inf, math.inf)
    tau_a, tau_c = useful_time_thresholds(2, 0.4)
    assert tau_a == pytest.approx(math.log(4.84 / 1.28), abs=1e-12)
    assert math.isinf(tau_c)
    tau_a, tau_c = useful_time_thresholds(2, 1.0)
    assert math.isinf(tau_a)
    assert tau_c == pytest.approx(math.log(2.0), abs=1e-12)


def test_optimized_fidelity_is_half_at_threshold():
    tau_a, _ = useful_time_thresholds(2, 0.4)
    assert optimal_symmetric(2, tau_a, 0.4).f_max == pytest.approx(
        0.5, abs=1e-9)
    _, tau_c = useful_time_thresholds(2, 1.0)
    assert optimal_symmetric(2, tau_c, 1.0).f_max == pytest.approx(
        0.5, abs=1e-9)


def test_monte_carlo_is_seed_reproducible():
    config = TelecloningConfig.symmetric(2, 1.0, 0.3, 0.3, 0.2)
    first = monte_carlo_protocol(config, 1.0 + 2.0j, 2000, seed=11)
    second = monte_carlo_protocol(config, 1.0 + 2.0j, 2000, seed=11)
    for a, b in zip(first, second):
        assert np.array_equal(a.mean, b.mean)
        assert np.array_equal(a.cov, b.cov)
        assert a.fidelity == b.fidelity


def test_monte_carlo_agrees_with_closed_form():
    config = TelecloningConfig.symmetric(2, 1.0, 0.3, 0.3, 0.2)
    closed = clone_fidelity_closed(config, 1)
    est = monte_carlo_protocol(config, 0.5 + 0.5j, 50000, seed=4)[0]
    assert est.fidelity == pytest.approx(closed, abs=0.01)
    pulls = np.abs(est.mean - math.sqrt(2.0) * np.array([0.5, 0.5]))
    assert np.all(pulls < 5.0 * est.mean_se)


def test_invalid_split_rejected():
    with pytest.raises(DomainError):
        symmetric_fidelity(2, 1.0, 1.5, 1.0, 0.0)
    with pytest.raises(DomainError):
        monte_carlo_protocol(
            TelecloningConfig.symmetric(2, 1.0, 0.1, 0.1, 0.0), 0.0, 10, 0)
