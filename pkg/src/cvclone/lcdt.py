"""Local strategy: clone at some point along the line, then transmit.

The input coherent state propagates for tau0, is cloned by the covariant
symmetric machine for m copies (Gaussian added noise nbar = (m-1)/m per
clone), and each clone propagates for tauc = tau_tot - tau0.  Only the
single-clone marginal is ever constructed; the channels factorize mode by
mode, so the joint clone state never enters the fidelity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import dblquad
from scipy.optimize import minimize_scalar

from .errors import DomainError
from .gaussian import (
    GaussianState,
    ThermalLossParams,
    apply_thermal_loss,
    coherent_state,
    fidelity_to_coherent,
)


@dataclass(frozen=True)
class LcdtConfig:
    """Clone count, cloner location split (tau0 before, tauc after) and
    thermal noise for one local-strategy run."""

    m: int
    tau0: float
    tauc: float
    mu: float

    def __post_init__(self):
        if self.m < 2:
            raise DomainError("m must be >= 2")
        for name in ("tau0", "tauc", "mu"):
            v = getattr(self, name)
            if not (v >= 0 and math.isfinite(v)):
                raise DomainError(f"{name} must be a nonnegative finite real")

    @property
    def tau_tot(self) -> float:
        return self.tau0 + self.tauc

    @property
    def nbar(self) -> float:
        """Added noise of the optimal symmetric machine, (m-1)/m."""
        return (self.m - 1.0) / self.m


@dataclass(frozen=True)
class GaussianAlphabet:
    """Gaussian distribution of input amplitudes with variance Omega^2."""

    omega_sq: float

    def __post_init__(self):
        if not (self.omega_sq >= 0 and math.isfinite(self.omega_sq)):
            raise DomainError("omega_sq must be a nonnegative real")

    def density(self, alpha: complex) -> float:
        if self.omega_sq == 0:
            raise DomainError("zero-width alphabet has no density")
        return math.exp(-abs(alpha) ** 2 / self.omega_sq) \
            / (math.pi * self.omega_sq)


@dataclass(frozen=True)
class ClonerPlacement:
    """Optimal cloner location along the line and the fidelity there."""

    tau_c_opt: float
    f_at_opt: float
    interior: bool


def apply_cloning_map(state: GaussianState, m: int) -> GaussianState:
    """Single-clone marginal of the covariant symmetric cloner.

    Adds (m-1)/m units of quadrature variance per clone and leaves the mean
    unchanged.  The joint m-clone output is deliberately not constructed.
    """
    if m < 2:
        raise DomainError("m must be >= 2")
    if state.n_modes != 1:
        raise DomainError("cloning map acts on a single-mode state")
    nbar = (m - 1.0) / m
    return GaussianState(1, state.mean, state.cov + nbar * np.eye(2))


def _noise_denominator(m: int, tau0: float, tauc: float, mu: float) -> float:
    """det-root of (clone covariance + vacuum), 1 + nbar e^{-tauc}
    + (1 - e^{-tau_tot}) mu."""
    nbar = (m - 1.0) / m
    return 1.0 + nbar * math.exp(-tauc) \
        + (1.0 - math.exp(-(tau0 + tauc))) * mu


def _amplitude_coefficient(tau_tot: float) -> float:
    """Coefficient of |alpha|^2 in the fidelity exponent numerator,
    (1 - e^{-tau_tot/2})^2."""
    return (1.0 - math.exp(-0.5 * tau_tot)) ** 2


def lcdt_fidelity(config: LcdtConfig, alpha: complex) -> float:
    """Single-shot clone fidelity of the local strategy.

    F = exp(-(1 - e^{-tau/2})^2 |alpha|^2 / D) / D with
    D = 1 + nbar e^{-tauc} + (1 - e^{-tau}) mu.
    """
    d = _noise_denominator(config.m, config.tau0, config.tauc, config.mu)
    c = _amplitude_coefficient(config.tau_tot) * abs(alpha) ** 2
    return math.exp(-c / d) / d


def lcdt_pipeline_state(config: LcdtConfig, alpha: complex) -> GaussianState:
    """Matrix pipeline propagate -> clone -> propagate; oracle for the
    closed-form fidelity."""
    state = coherent_state(alpha)
    state = apply_thermal_loss(state, [ThermalLossParams(config.tau0,
                                                         config.mu)])
    state = apply_cloning_map(state, config.m)
    return apply_thermal_loss(state, [ThermalLossParams(config.tauc,
                                                        config.mu)])


def lcdt_fidelity_pipeline(config: LcdtConfig, alpha: complex) -> float:
    return fidelity_to_coherent(lcdt_pipeline_state(config, alpha), alpha)


def admissible_amplitude_sq(m: int, tau_tot: float, mu: float) -> float:
    """Amplitude threshold |alpha~|^2 above which the best cloner location
    moves away from the sending station.

    [nbar - mu + e^{tau} (1 + mu)] / (e^{tau/2} - 1)^2 under the adopted
    quadrature convention.
    """
    if tau_tot <= 0:
        return math.inf
    nbar = (m - 1.0) / m
    return (nbar - mu + math.exp(tau_tot) * (1.0 + mu)) \
        / (math.exp(0.5 * tau_tot) - 1.0) ** 2


def stationary_tauc(m: int, tau_tot: float, mu: float,
                    alpha_sq: float) -> float:
    """Stationary point of the fidelity over the cloner location.

    Solves D(tauc) = (1 - e^{-tau/2})^2 |alpha|^2; defined for amplitudes
    above the admissibility threshold.  For very large amplitudes the
    stationary point falls below tauc = 0 (the fidelity is then maximized
    by placing the cloner as late as possible within the physical range).
    """
    nbar = (m - 1.0) / m
    c = _amplitude_coefficient(tau_tot) * alpha_sq
    arg = (c - 1.0 - (1.0 - math.exp(-tau_tot)) * mu) / nbar
    if arg <= 0:
        raise DomainError("amplitude below the admissibility threshold")
    return -math.log(arg)


def optimize_cloner_location(m: int, tau_tot: float, mu: float,
                             alpha: complex) -> ClonerPlacement:
    """Best cloner location for a given amplitude.

    For |alpha|^2 at or below the admissibility threshold the fidelity is
    maximized at the boundary tauc = tau_tot (cloner at the sending
    station).  Above the threshold the stationary point of the fidelity is
    returned; its fidelity is 1/(e c) with c the amplitude coefficient, and
    is always below 1/e.
    """
    if tau_tot <= 0:
        raise DomainError("tau_tot must be positive")
    alpha_sq = abs(alpha) ** 2
    if alpha_sq <= admissible_amplitude_sq(m, tau_tot, mu):
        cfg = LcdtConfig(m, 0.0, tau_tot, mu)
        return ClonerPlacement(tau_tot, lcdt_fidelity(cfg, alpha), False)
    tauc = stationary_tauc(m, tau_tot, mu, alpha_sq)
    c = _amplitude_coefficient(tau_tot) * alpha_sq
    return ClonerPlacement(tauc, math.exp(-1.0) / c, True)


def scan_cloner_location(m: int, tau_tot: float, mu: float, alpha: complex,
                         tauc_min: float = 0.0, tauc_max: float = None,
                         grid_step: float = 1e-3):
    """Grid scan plus bounded refinement of the fidelity over the cloner
    location; independent check of :func:`optimize_cloner_location`.

    Scans the fidelity as a function of tauc on [tauc_min, tauc_max]
    (default [0, tau_tot]); the formal continuation to negative tauc can be
    requested explicitly to locate stationary points outside the physical
    range.
    """
    if tauc_max is None:
        tauc_max = tau_tot
    nbar = (m - 1.0) / m
    c = _amplitude_coefficient(tau_tot) * abs(alpha) ** 2
    base = 1.0 + (1.0 - math.exp(-tau_tot)) * mu

    def fid(tauc):
        d = base + nbar * math.exp(-tauc)
        return math.exp(-c / d) / d

    grid = np.arange(tauc_min, tauc_max + grid_step, grid_step)
    values = np.array([fid(t) for t in grid])
    k = int(values.argmax())
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    if lo == hi:
        return float(grid[k]), float(values[k])
    res = minimize_scalar(lambda t: -fid(t), bounds=(lo, hi),
                          method="bounded",
                          options={"xatol": 1e-12})
    best_t = float(res.x)
    best_f = fid(best_t)
    if values[k] > best_f:
        best_t, best_f = float(grid[k]), float(values[k])
    return best_t, best_f


def averaged_fidelity(m: int, tau_tot: float, mu: float,
                      alphabet: GaussianAlphabet) -> float:
    """Fidelity averaged over a Gaussian alphabet, cloner at the sender.

    Closed form 1 / (D + c0 Omega^2) with D the zero-amplitude noise
    denominator at tauc = tau_tot and c0 the amplitude coefficient.
    """
    d = _noise_denominator(m, 0.0, tau_tot, mu)
    c0 = _amplitude_coefficient(tau_tot)
    return 1.0 / (d + c0 * alphabet.omega_sq)


def averaged_fidelity_quadrature(m: int, tau_tot: float, mu: float,
                                 alphabet: GaussianAlphabet,
                                 radius_factor: float = 8.0) -> float:
    """2-D adaptive quadrature of the single-shot fidelity over the
    alphabet; independent oracle for :func:`averaged_fidelity`."""
    if alphabet.omega_sq == 0:
        cfg = LcdtConfig(m, 0.0, tau_tot, mu)
        return lcdt_fidelity(cfg, 0.0)
    omega = math.sqrt(alphabet.omega_sq)
    cfg = LcdtConfig(m, 0.0, tau_tot, mu)
    r = radius_factor * omega

    def integrand(y, x):
        a = complex(x, y)
        return alphabet.density(a) * lcdt_fidelity(cfg, a)

    val, _ = dblquad(integrand, -r, r, -r, r,
                     epsabs=1e-10, epsrel=1e-8)
    return val


def averaged_fidelity_variant_no_offset(m: int, tau_tot: float, mu: float,
                                        alphabet: GaussianAlphabet) -> float:
    """A variant closed form that drops the "-1" in the denominator offset
    and halves the amplitude exponent; inconsistent with the quadrature
    oracle and the crossover thresholds.  Exposed for diagnostics only."""
    x = math.exp(tau_tot)
    xh = math.exp(0.5 * tau_tot)
    om2 = alphabet.omega_sq
    return m * x / (m * (1.0 - mu + om2 * (1.0 - 2.0 * xh)
                         + x * (1.0 + mu + om2)))


def averaged_fidelity_diagnostics(m: int, tau_tot: float, mu: float,
                                  alphabet: GaussianAlphabet) -> dict:
    """Implemented averaged fidelity next to the no-offset variant and the
    quadrature oracle, with their differences."""
    implemented = averaged_fidelity(m, tau_tot, mu, alphabet)
    variant = averaged_fidelity_variant_no_offset(m, tau_tot, mu, alphabet)
    quadrature = averaged_fidelity_quadrature(m, tau_tot, mu, alphabet)
    return {
        "implemented": implemented,
        "variant_no_offset": variant,
        "quadrature": quadrature,
        "implemented_minus_quadrature": implemented - quadrature,
        "variant_minus_quadrature": variant - quadrature,
    }


@dataclass(frozen=True)
class OmegaThresholds:
    """Alphabet-width thresholds (as Omega^2) above which the nonlocal
    strategy beats the local one; the strong-source value is None outside
    its regime."""

    omega_a_sq: float
    omega_c_sq: float  # or None


def omega_thresholds(m: int, tau_tot: float, mu: float) -> OmegaThresholds:
    """Crossover alphabet widths of the two nonlocal regimes.

    Omega_a^2 = (1 + e^{tau/2}) (m - 1) / ((e^{tau/2} - 1) m) is independent
    of the thermal noise; Omega_c^2 is returned only where the
    strong-source regime applies.
    """
    if tau_tot <= 0:
        raise DomainError("tau_tot must be positive")
    xh = math.exp(0.5 * tau_tot)
    omega_a_sq = (1.0 + xh) * (m - 1.0) / ((xh - 1.0) * m)
    omega_c_sq = None
    ln_m = math.log(m)
    window_ok = tau_tot > ln_m and mu < 1.0 / (m - 1)
    if window_ok and (mu == 0
                      or tau_tot < math.log((1.0 + mu) ** 2 / (m * mu * mu))):
        x = math.exp(tau_tot)
        omega_c_sq = (1.0 + m * (mu - 1.0) + m * x * (1.0 + mu)
                      - math.sqrt(m) * xh * (1.0 + mu + m * mu)) \
            / (m * (xh - 1.0) ** 2)
    return OmegaThresholds(omega_a_sq, omega_c_sq)
