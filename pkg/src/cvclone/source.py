"""Multimode entangled source states for nonlocal distribution.

Constructs the (m+1)-mode pure Gaussian state whose mode 0 is pairwise
two-mode-squeezed with each of the m receiver modes while the receivers
share beam-splitter-like correlations.  The state is parametrized directly
by the mean photon numbers N_1..N_m of the receiver modes; mode 0 carries
N_0 = sum(N_k) photons.

A truncated-Fock-space expansion of the same state provides an independent
numerical oracle for the covariance matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .gaussian import GaussianState, ModePartition, ppt_min_symplectic

MAX_ENUMERATED_MODES = 6


@dataclass(frozen=True)
class Sum1Params:
    """Receiver mode count m and mean photon numbers N_1..N_m."""

    photon_numbers: tuple

    def __post_init__(self):
        ns = tuple(float(n) for n in self.photon_numbers)
        if not ns:
            raise DomainError("need at least one receiver mode")
        if any(not math.isfinite(n) or n < 0 for n in ns):
            raise DomainError("photon numbers must be nonnegative reals")
        object.__setattr__(self, "photon_numbers", ns)

    @property
    def m(self) -> int:
        return len(self.photon_numbers)

    @property
    def n0(self) -> float:
        """Mean photon number of mode 0, fixed by photon-number conservation."""
        return sum(self.photon_numbers)

    def coupling(self, k: int) -> float:
        """Schmidt-like coefficient of receiver k, sqrt(N_k / (1 + N_0))."""
        return math.sqrt(self.photon_numbers[k] / (1.0 + self.n0))

    @property
    def normalization(self) -> float:
        return 1.0 / (1.0 + self.n0)


@dataclass(frozen=True)
class SymmetricSum1:
    """Symmetric source: all receiver modes carry the same photon number."""

    m: int
    n_per_mode: float

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("m must be >= 1")
        if not (self.n_per_mode >= 0 and math.isfinite(self.n_per_mode)):
            raise DomainError("n_per_mode must be a nonnegative real")

    def to_params(self) -> Sum1Params:
        return Sum1Params((self.n_per_mode,) * self.m)


@dataclass(frozen=True)
class FockAmplitudes:
    """Truncated number-basis expansion over receiver occupations.

    The amplitude map is keyed by the receiver tuple (n_1..n_m); the mode-0
    occupation equals sum(n_k) and is implied.  ``captured_norm`` is the
    total probability weight inside the cutoff; ``norm_warning`` flags a
    cutoff too small to be meaningful.
    """

    cutoff: int
    amplitudes: dict
    captured_norm: float
    norm_warning: bool


def covariance_matrix(params: Sum1Params) -> GaussianState:
    """Closed-form covariance matrix of the (m+1)-mode source state.

    Mode 0 occupies block index 0; receivers follow in declaration order.
    Diagonal blocks are (N_k + 1/2) I; mode-0/receiver blocks are
    sqrt(N_h (N_0 + 1)) Diag(1, -1); receiver/receiver blocks are
    sqrt(N_i N_j) I.  The state is pure and has zero mean.
    """
    m = params.m
    n0 = params.n0
    dim = 2 * (m + 1)
    cov = np.zeros((dim, dim))
    eye = np.eye(2)
    pflip = np.diag([1.0, -1.0])
    cov[0:2, 0:2] = (n0 + 0.5) * eye
    for h in range(1, m + 1):
        nh = params.photon_numbers[h - 1]
        cov[2 * h:2 * h + 2, 2 * h:2 * h + 2] = (nh + 0.5) * eye
        block = math.sqrt(nh * (n0 + 1.0)) * pflip
        cov[0:2, 2 * h:2 * h + 2] = block
        cov[2 * h:2 * h + 2, 0:2] = block
        for j in range(h + 1, m + 1):
            nj = params.photon_numbers[j - 1]
            bij = math.sqrt(nh * nj) * eye
            cov[2 * h:2 * h + 2, 2 * j:2 * j + 2] = bij
            cov[2 * j:2 * j + 2, 2 * h:2 * h + 2] = bij
    return GaussianState(m + 1, np.zeros(dim), cov)


def _receiver_tuples(m: int, cutoff: int):
    """All receiver occupation tuples with total photon number <= cutoff."""
    for total in range(cutoff + 1):
        for cuts in itertools.combinations(range(total + m - 1), m - 1):
            occ = []
            prev = -1
            for c in cuts:
                occ.append(c - prev - 1)
                prev = c
            occ.append(total + m - 2 - prev)
            yield tuple(occ)


def fock_state_amplitudes(params: Sum1Params, cutoff: int) -> FockAmplitudes:
    """Number-basis amplitudes up to total receiver photon number ``cutoff``.

    amplitude(n_1..n_m) = sqrt(Z) * prod_k C_k^{n_k}
                          * sqrt((sum n_k)! / prod n_k!),
    with C_k the per-mode coupling and Z the normalization of the source.
    Factorials are evaluated in log space so large cutoffs stay finite.
    """
    if cutoff < 0:
        raise DomainError("cutoff must be >= 0")
    m = params.m
    log_z = math.log(params.normalization)
    log_c = []
    for k in range(m):
        c = params.coupling(k)
        log_c.append(math.log(c) if c > 0 else -math.inf)
    amplitudes = {}
    norm = 0.0
    for occ in _receiver_tuples(m, cutoff):
        log_amp = 0.5 * log_z
        for nk, lc in zip(occ, log_c):
            if nk:
                if lc == -math.inf:
                    log_amp = -math.inf
                    break
                log_amp += nk * lc
        if log_amp == -math.inf:
            continue
        total = sum(occ)
        log_amp += 0.5 * (math.lgamma(total + 1)
                          - sum(math.lgamma(nk + 1) for nk in occ))
        amp = math.exp(log_amp)
        amplitudes[occ] = amp
        norm += amp * amp
    return FockAmplitudes(cutoff, amplitudes, norm, norm < 0.5)


def covariance_from_fock_oracle(params: Sum1Params, cutoff: int) -> np.ndarray:
    """Covariance matrix from truncated-Fock expectation values.

    Independent of the closed-form construction: evaluates the symmetrized
    quadrature second moments directly from <a_j^dag a_k> and <a_j a_k>
    over the truncated expansion.  Requires the truncation to capture all
    but 1e-8 of the norm.
    """
    fock = fock_state_amplitudes(params, cutoff)
    if fock.captured_norm < 1.0 - 1e-8:
        raise DomainError(
            f"cutoff {cutoff} captures only {fock.captured_norm:.12f} "
            "of the norm; increase it")
    m = params.m
    amp = fock.amplitudes
    n_modes = m + 1

    # e1[j, k] = <a_j^dag a_k>, e2[j, k] = <a_j a_k>; mode 0 first.
    e1 = np.zeros((n_modes, n_modes))
    e2 = np.zeros((n_modes, n_modes))
    for occ, a in amp.items():
        total = sum(occ)
        e1[0, 0] += a * a * total
        for j in range(m):
            e1[j + 1, j + 1] += a * a * occ[j]

    for occ, a in amp.items():
        # <a_j^dag a_k> for receivers j != k: partner occ - e_k + e_j.
        for k in range(m):
            if occ[k] == 0:
                continue
            for j in range(m):
                if j == k:
                    continue
                partner = list(occ)
                partner[k] -= 1
                partner[j] += 1
                b = amp.get(tuple(partner))
                if b is not None:
                    e1[j + 1, k + 1] += (a * b
                                         * math.sqrt(occ[k] * (occ[j] + 1)))
        # <a_0 a_k>: partner occ + e_k, one photon more in mode 0 as well.
        total = sum(occ)
        for k in range(m):
            partner = list(occ)
            partner[k] += 1
            b = amp.get(tuple(partner))
            if b is not None:
                val = a * b * math.sqrt((total + 1) * (occ[k] + 1))
                e2[0, k + 1] += val
                e2[k + 1, 0] += val

    cov = np.zeros((2 * n_modes, 2 * n_modes))
    for j in range(n_modes):
        for k in range(n_modes):
            sym1 = 0.5 * (e1[j, k] + e1[k, j])
            delta = 0.5 if j == k else 0.0
            cov[2 * j, 2 * k] = e2[j, k] + sym1 + delta
            cov[2 * j + 1, 2 * k + 1] = -e2[j, k] + sym1 + delta
    return cov


def check_full_inseparability(params: Sum1Params):
    """Partial-transpose test across every bipartition of the m+1 modes.

    Returns a list of (ModePartition, min symplectic eigenvalue) pairs;
    values below 1/2 certify entanglement across that partition.
    """
    n_modes = params.m + 1
    if n_modes > MAX_ENUMERATED_MODES:
        raise DomainError(
            f"exhaustive enumeration supports at most {MAX_ENUMERATED_MODES} "
            "modes; call ppt_min_symplectic with explicit partitions instead")
    state = covariance_matrix(params)
    results = []
    modes = range(n_modes)
    # Fix mode 0 in group_a to enumerate each bipartition once.
    others = [i for i in modes if i != 0]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            group_a = frozenset((0,) + extra)
            group_b = frozenset(modes) - group_a
            if not group_b:
                continue
            part = ModePartition(group_a, group_b)
            results.append((part, ppt_min_symplectic(state, part)))
    return results
