"""Gaussian states on n bosonic modes and the primitive operations on them.

Conventions
-----------
Quadratures are ordered (q_1, p_1, ..., q_n, p_n) with q = (a + a^dag)/sqrt(2)
and p = (a - a^dag)/(i sqrt(2)), so the vacuum has covariance (1/2) * Identity
and a coherent state |alpha> has mean vector sqrt(2) * (Re alpha, Im alpha).

All operations are pure functions; a GaussianState is immutable after
construction and safe to share between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import DomainError, NumericalError

VACUUM_VAR = 0.5
SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-9
PAIRING_TOL = 1e-9
MAX_CONDITION = 1e12

# Momentum sign flip, Diag(1, -1); shows up in heterodyne conditioning and
# in the partial transposition used by the entanglement criterion.
P_FLIP = np.diag([1.0, -1.0])


def symplectic_form(n_modes: int) -> np.ndarray:
    """Standard symplectic form, direct sum of ((0, 1), (-1, 0)) blocks."""
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k:2 * k + 2, 2 * k:2 * k + 2] = block
    return omega


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a symmetric 2n x 2n matrix, ascending.

    Computed as the absolute values of the eigenvalues of i*Omega*cov,
    which come in +/- pairs; the pairs are averaged and returned once each.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
        raise DomainError("covariance matrix must be square with even size")
    if not np.allclose(cov, cov.T, atol=1e-10):
        raise DomainError("covariance matrix must be symmetric")
    n = cov.shape[0] // 2
    eigs = np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ cov))
    eigs.sort()
    scale = max(1.0, eigs[-1]) if eigs.size else 1.0
    pairs = eigs.reshape(n, 2)
    if np.any(np.abs(pairs[:, 1] - pairs[:, 0]) > PAIRING_TOL * scale):
        raise NumericalError("symplectic eigenvalues failed to pair up")
    return pairs.mean(axis=1)


@dataclass(frozen=True)
class GaussianState:
    """An n-mode Gaussian state given by its mean vector and covariance."""

    n_modes: int
    mean: np.ndarray
    cov: np.ndarray
    _skip_checks: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_modes < 1:
            raise DomainError("n_modes must be a positive integer")
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float)).copy()
        cov = np.asarray(self.cov, dtype=float).copy()
        if mean.shape != (2 * self.n_modes,):
            raise DomainError(
                f"mean must have length {2 * self.n_modes}, got {mean.shape}")
        if cov.shape != (2 * self.n_modes, 2 * self.n_modes):
            raise DomainError("covariance matrix has the wrong shape")
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(cov)):
            raise DomainError("mean and covariance must be finite")
        scale = max(1.0, np.abs(cov).max())
        if np.abs(cov - cov.T).max() > SYMMETRY_TOL * scale:
            raise DomainError("covariance matrix is not symmetric")
        cov = 0.5 * (cov + cov.T)
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        if not self._skip_checks:
            nu_min = symplectic_eigenvalues(cov).min()
            if nu_min < VACUUM_VAR - PHYSICALITY_TOL:
                raise DomainError(
                    f"unphysical covariance: min symplectic eigenvalue {nu_min}")

    def min_symplectic_eigenvalue(self) -> float:
        return float(symplectic_eigenvalues(self.cov).min())


@dataclass(frozen=True)
class ThermalLossParams:
    """Per-mode lossy thermal channel: effective time tau, thermal photons mu."""

    tau: float
    mu: float

    def __post_init__(self):
        if not (self.tau >= 0 and math.isfinite(self.tau)):
            raise DomainError("tau must be a nonnegative finite real")
        if not (self.mu >= 0 and math.isfinite(self.mu)):
            raise DomainError("mu must be a nonnegative finite real")

    @property
    def kappa(self) -> float:
        """Asymptotic quadrature variance mu + 1/2 of the channel."""
        return self.mu + VACUUM_VAR


@dataclass(frozen=True)
class MeasurementOutcome:
    """Result of a double-homodyne detection, z = (Re z, Im z)."""

    z: tuple

    def __post_init__(self):
        z = tuple(float(v) for v in self.z)
        if len(z) != 2 or not all(math.isfinite(v) for v in z):
            raise DomainError("outcome must be a finite real 2-vector")
        object.__setattr__(self, "z", z)

    def as_array(self) -> np.ndarray:
        return np.array(self.z)


@dataclass(frozen=True)
class ModePartition:
    """A bipartition of mode indices into two nonempty disjoint groups."""

    group_a: frozenset
    group_b: frozenset

    def __post_init__(self):
        a = frozenset(int(i) for i in self.group_a)
        b = frozenset(int(i) for i in self.group_b)
        if not a or not b or a & b:
            raise DomainError("groups must be nonempty and disjoint")
        object.__setattr__(self, "group_a", a)
        object.__setattr__(self, "group_b", b)

    def validate_for(self, n_modes: int) -> None:
        if self.group_a | self.group_b != frozenset(range(n_modes)):
            raise DomainError(
                f"partition must cover mode indices 0..{n_modes - 1}")


def coherent_state(alpha: complex) -> GaussianState:
    """The coherent state |alpha>: vacuum covariance, displaced mean."""
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise DomainError("amplitude must be finite")
    mean = math.sqrt(2.0) * np.array([alpha.real, alpha.imag])
    return GaussianState(1, mean, VACUUM_VAR * np.eye(2))


def apply_thermal_loss(state: GaussianState, params) -> GaussianState:
    """Evolve through independent lossy thermal channels, one per mode.

    cov' = G^(1/2) cov G^(1/2) + (1 - G) (mu + 1/2) I, mean' = G^(1/2) mean,
    with G = diag(exp(-tau_k)) acting blockwise.  Composes as a semigroup in
    tau for equal mu, and has fixed point (mu + 1/2) I.
    """
    params = list(params)
    if len(params) != state.n_modes:
        raise DomainError(
            f"need one ThermalLossParams per mode ({state.n_modes}), "
            f"got {len(params)}")
    g_diag = np.repeat([math.exp(-p.tau) for p in params], 2)
    kappa = np.repeat([p.kappa for p in params], 2)
    g_half = np.sqrt(g_diag)
    cov = (g_half[:, None] * state.cov * g_half[None, :]
           + np.diag((1.0 - g_diag) * kappa))
    mean = g_half * state.mean
    return GaussianState(state.n_modes, mean, cov)


def displace(state: GaussianState, per_mode_shifts) -> GaussianState:
    """Shift the mean vector by the given per-mode (dq, dp) displacements."""
    shifts = [np.asarray(s, dtype=float) for s in per_mode_shifts]
    if len(shifts) != state.n_modes or any(s.shape != (2,) for s in shifts):
        raise DomainError("need one 2-vector shift per mode")
    return GaussianState(state.n_modes, state.mean + np.concatenate(shifts),
                         state.cov)


def partial_trace(state: GaussianState, keep) -> GaussianState:
    """Reduced state on the kept modes, in ascending mode order."""
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise DomainError("keep-set must be nonempty")
    if keep[0] < 0 or keep[-1] >= state.n_modes:
        raise DomainError("keep-set contains invalid mode indices")
    idx = np.concatenate([[2 * k, 2 * k + 1] for k in keep])
    return GaussianState(len(keep), state.mean[idx],
                         state.cov[np.ix_(idx, idx)])


def _quad_indices(mode: int) -> list:
    return [2 * mode, 2 * mode + 1]


def condition_on_double_homodyne(support: GaussianState, measured_mode: int,
                                 reference_cov: np.ndarray,
                                 reference_mean: np.ndarray,
                                 outcome: MeasurementOutcome):
    """Condition a multimode Gaussian state on a double-homodyne outcome.

    The measured mode is detected jointly with an external reference mode
    (covariance ``reference_cov``, mean ``reference_mean``); the detection
    reads out the complex combination of the two, which in phase space mixes
    the measured-mode variables with the momentum-flipped reference.

    Returns the reduced Gaussian state on the unmeasured modes together with
    the probability density of the outcome, normalized so that the density
    integrates to 1 over the real outcome plane.
    """
    if support.n_modes < 2:
        raise DomainError("support must have at least 2 modes")
    if not 0 <= measured_mode < support.n_modes:
        raise DomainError("measured_mode out of range")
    ref_cov = np.asarray(reference_cov, dtype=float)
    ref_mean = np.asarray(reference_mean, dtype=float)
    if ref_cov.shape != (2, 2) or ref_mean.shape != (2,):
        raise DomainError("reference must be a single-mode state")
    if not np.allclose(ref_cov, ref_cov.T, atol=1e-10):
        raise DomainError("reference covariance must be symmetric")
    if np.linalg.eigvalsh(ref_cov).min() <= 0:
        raise DomainError("reference covariance must be positive definite")

    meas = _quad_indices(measured_mode)
    rest = [i for i in range(2 * support.n_modes) if i not in meas]
    block_a = support.cov[np.ix_(meas, meas)]
    block_b = support.cov[np.ix_(rest, rest)]
    block_c = support.cov[np.ix_(meas, rest)]

    noise = block_a + P_FLIP @ ref_cov @ P_FLIP
    if np.linalg.cond(noise) > MAX_CONDITION:
        raise NumericalError(
            f"measurement noise matrix is ill-conditioned "
            f"(cond={np.linalg.cond(noise):.3e})")
    try:
        factor = cho_factor(noise)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - cond guard first
        raise NumericalError("measurement noise matrix not SPD") from exc

    x = outcome.as_array() - support.mean[meas] + P_FLIP @ ref_mean
    gain = cho_solve(factor, block_c).T          # C^T (A + M)^-1, (2n-2) x 2
    cond_cov = block_b - gain @ block_c
    cond_mean = support.mean[rest] + gain @ x
    density = (math.exp(-0.5 * x @ cho_solve(factor, x))
               / (2.0 * math.pi * math.sqrt(np.linalg.det(noise))))
    return (GaussianState(support.n_modes - 1, cond_mean, cond_cov),
            density)


def fidelity_to_coherent(state: GaussianState, alpha: complex) -> float:
    """Overlap <alpha| rho |alpha> of a single-mode Gaussian state."""
    if state.n_modes != 1:
        raise DomainError("fidelity_to_coherent expects a 1-mode state")
    target = coherent_state(alpha)
    sigma = state.cov + VACUUM_VAR * np.eye(2)
    delta = state.mean - target.mean
    return float(math.exp(-0.5 * delta @ np.linalg.solve(sigma, delta))
                 / math.sqrt(np.linalg.det(sigma)))


def ppt_min_symplectic(state: GaussianState,
                       partition: ModePartition) -> float:
    """Minimum symplectic eigenvalue after partial transposition.

    Partial transposition flips the momentum sign on the modes of group_b.
    A value below 1/2 certifies entanglement across the partition for
    Gaussian states.
    """
    partition.validate_for(state.n_modes)
    flip = np.ones(2 * state.n_modes)
    for k in partition.group_b:
        flip[2 * k + 1] = -1.0
    cov_pt = flip[:, None] * state.cov * flip[None, :]
    return float(symplectic_eigenvalues(cov_pt).min())
