import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cvclone.errors import DomainError
from cvclone.gaussian import ModePartition, ppt_min_symplectic
from cvclone.source import (
    SymmetricSum1,
    Sum1Params,
    check_full_inseparability,
    covariance_from_fock_oracle,
    covariance_matrix,
    fock_state_amplitudes,
)


def test_symmetric_params():
    params = SymmetricSum1(3, 0.4).to_params()
    assert params.m == 3
    assert params.n0 == pytest.approx(1.2)
    assert params.coupling(1) == pytest.approx(math.sqrt(0.4 / 2.2))
    assert params.normalization == pytest.approx(1.0 / 2.2)


def test_vacuum_source_is_vacuum():
    state = covariance_matrix(Sum1Params((0.0, 0.0)))
    assert_allclose(state.cov, 0.5 * np.eye(6))
    assert_allclose(state.mean, np.zeros(6))


def test_covariance_blocks():
    params = Sum1Params((0.3, 0.7))
    state = covariance_matrix(params)
    n0 = 1.0
    assert_allclose(np.diag(state.cov),
                    [n0 + 0.5, n0 + 0.5, 0.8, 0.8, 1.2, 1.2])
    # port-to-sender coupling carries the momentum flip
    a1 = math.sqrt(0.3 * (n0 + 1.0))
    assert_allclose(state.cov[0:2, 2:4], np.diag([a1, -a1]))
    # receiver-receiver coupling does not
    b12 = math.sqrt(0.3 * 0.7)
    assert_allclose(state.cov[2:4, 4:6], b12 * np.eye(2))


def test_source_state_is_physical_and_pure():
    from cvclone.gaussian import symplectic_eigenvalues
    state = covariance_matrix(SymmetricSum1(4, 1.3).to_params())
    assert_allclose(symplectic_eigenvalues(state.cov), 0.5, atol=1e-9)


def test_fock_amplitudes_capture_norm():
    amps = fock_state_amplitudes(SymmetricSum1(2, 0.2).to_params(), 30)
    assert amps.captured_norm == pytest.approx(1.0, abs=1e-10)
    total = sum(a * a for a in amps.amplitudes.values())
    assert total == pytest.approx(amps.captured_norm)


@pytest.mark.parametrize("m,n,cutoff", [(2, 0.2, 30), (3, 0.15, 20)])
def test_fock_oracle_matches_closed_covariance(m, n, cutoff):
    params = SymmetricSum1(m, n).to_params()
    oracle = covariance_from_fock_oracle(params, cutoff)
    closed = covariance_matrix(params).cov
    assert np.max(np.abs(oracle - closed)) < 1e-6


def test_twin_beam_ppt_value():
    state = covariance_matrix(Sum1Params((1.0,)))
    partition = ModePartition(frozenset({0}), frozenset({1}))
    expected = 1.0 / (2.0 * (3.0 + 2.0 * math.sqrt(2.0)))
    assert ppt_min_symplectic(state, partition) == pytest.approx(
        expected, rel=1e-10)


def test_full_inseparability_small_sources():
    for m in (2, 3):
        report = check_full_inseparability(SymmetricSum1(m, 0.5).to_params())
        assert len(report) == 2 ** m - 1
        assert all(value < 0.5 for _, value in report)


def test_negative_photon_number_rejected():
    with pytest.raises(DomainError):
        Sum1Params((-0.1, 0.2))
