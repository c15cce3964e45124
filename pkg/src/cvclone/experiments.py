"""Experiment runner: strategy comparison, sweeps and reference datasets.

All outputs are plain ReportTable values that serialize to CSV with a
'#'-prefixed provenance header; numeric formatting is fixed at 17
significant digits so identical invocations produce byte-identical files.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import DomainError
from .lcdt import GaussianAlphabet, averaged_fidelity, omega_thresholds
from .telecloning import numeric_optimal, optimal_symmetric

TIE_BAND = 1e-12

WINNER_TELE = "tele"
WINNER_LCDT = "lcdt"
WINNER_TIE = "tie"

SWEEP_VARIABLES = ("tau_tot", "mu", "omega", "m")

FIGURES = ("fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isinf(v):
        return "inf"
    return format(v, ".17g")


@dataclass(frozen=True)
class ComparisonRecord:
    m: int
    tau_tot: float
    mu: float
    omega: float
    f_tele: float
    regime: str
    n_opt: float
    tau0_opt: float
    f_lcdt: float
    winner: str

    def row(self) -> tuple:
        return (self.m, self.tau_tot, self.mu, self.omega, self.f_tele,
                self.regime, self.n_opt, self.tau0_opt, self.f_lcdt,
                self.winner)


COMPARISON_HEADER = ("m", "tau_tot", "mu", "omega", "f_tele", "regime",
                     "n_opt", "tau0_opt", "f_lcdt", "winner")


@dataclass
class ReportTable:
    """A header row, data rows, and a provenance block for CSV emission."""

    header: tuple
    rows: list
    provenance: dict = field(default_factory=dict)

    def add(self, row) -> None:
        if len(row) != len(self.header):
            raise DomainError("row length does not match the header")
        self.rows.append(tuple(row))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# cvclone {__version__}\n")
        for key in sorted(self.provenance):
            buf.write(f"# {key}={self.provenance[key]}\n")
        buf.write(",".join(self.header) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        return buf.getvalue()

    def write(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.to_csv())


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable over a linear range, everything else fixed."""

    variable: str
    start: float
    stop: float
    steps: int
    fixed: dict
    strategies: tuple = ("telecloning", "lcdt")

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise DomainError(
                f"variable must be one of {SWEEP_VARIABLES}")
        if self.steps < 2:
            raise DomainError("steps must be >= 2")
        unknown = set(self.strategies) - {"telecloning", "lcdt"}
        if unknown:
            raise DomainError(f"unknown strategies: {sorted(unknown)}")

    def values(self):
        vals = np.linspace(self.start, self.stop, self.steps)
        if self.variable == "m":
            return [int(round(v)) for v in vals]
        return [float(v) for v in vals]


def compare(m: int, tau_tot: float, mu: float,
            omega: float) -> ComparisonRecord:
    """Optimized nonlocal fidelity against the alphabet-averaged local one."""
    if omega < 0:
        raise DomainError("omega must be nonnegative")
    strategy = optimal_symmetric(m, tau_tot, mu)
    f_lcdt = averaged_fidelity(m, tau_tot, mu,
                               GaussianAlphabet(omega * omega))
    diff = strategy.f_max - f_lcdt
    if abs(diff) < TIE_BAND:
        winner = WINNER_TIE
    else:
        winner = WINNER_TELE if diff > 0 else WINNER_LCDT
    return ComparisonRecord(m, tau_tot, mu, omega, strategy.f_max,
                            strategy.regime, strategy.n_opt,
                            strategy.tau0_opt, f_lcdt, winner)


def run_sweep(spec: SweepSpec) -> ReportTable:
    """One comparison record per sweep step, in sweep order."""
    fixed = dict(spec.fixed)
    table = ReportTable(COMPARISON_HEADER, [], {
        "sweep_variable": spec.variable,
        "sweep_range": f"{spec.start}:{spec.stop}:{spec.steps}",
    })
    for i, value in enumerate(spec.values()):
        params = dict(fixed)
        params[spec.variable] = value
        try:
            rec = compare(int(params["m"]), float(params["tau_tot"]),
                          float(params["mu"]), float(params["omega"]))
        except (KeyError, DomainError) as exc:
            raise DomainError(f"sweep step {i}: {exc}") from exc
        table.add(rec.row())
    return table


DEFAULT_TABLE1_GRID = tuple(
    (m, tau, mu)
    for m in (2, 3, 5)
    for mu in (0.0, 0.2, 0.5, 2.0)
    for tau in (0.3, 1.0, 2.0, 3.0)
)

TABLE1_HEADER = ("m", "tau_tot", "mu", "regime", "n_opt", "tau0_opt",
                 "f_max", "n_opt_numeric", "tau0_opt_numeric",
                 "f_max_numeric", "f_deviation")


def reproduce_table1(grid=None) -> ReportTable:
    """Closed-form optimum next to the direct numeric search, per cell."""
    if grid is None:
        grid = DEFAULT_TABLE1_GRID
    grid = list(grid)
    if not grid:
        raise DomainError("grid must be nonempty")
    table = ReportTable(TABLE1_HEADER, [], {"cells": len(grid)})
    for m, tau, mu in grid:
        closed = optimal_symmetric(m, tau, mu)
        numeric = numeric_optimal(m, tau, mu)
        table.add((m, tau, mu, closed.regime, closed.n_opt, closed.tau0_opt,
                   closed.f_max, numeric.n_opt, numeric.tau0_opt,
                   numeric.f_max, numeric.f_max - closed.f_max))
    return table


FIGURE_CURVES = {
    "fig2a": {"m": 2, "mu": 0.0},
    "fig2b": {"m": 5, "mu": 0.0},
    "fig3a": {"m": 2, "mu": 0.4},
    "fig3b": {"m": 3, "mu": 0.4},
}
FIGURE_OMEGAS = (0.0, 1.0, 2.0, 3.0)
FIGURE_TAU_POINTS = 200
FIGURE_TAU_MAX = 3.0
FIGURE_THRESHOLD_MS = (2, 4, 8, 16)


def reproduce_figure(which: str) -> ReportTable:
    """Machine-readable curve datasets behind the reference plots.

    fig2*/fig3*: optimized nonlocal fidelity and local fidelity for
    Omega in {0, 1, 2, 3} over tau in (0, 3].  fig4*: crossover alphabet
    widths Omega(tau) for m in {2, 4, 8, 16}.
    """
    if which not in FIGURES:
        raise DomainError(f"unknown figure {which!r}; pick one of {FIGURES}")
    taus = np.linspace(FIGURE_TAU_MAX / FIGURE_TAU_POINTS, FIGURE_TAU_MAX,
                       FIGURE_TAU_POINTS)
    if which in FIGURE_CURVES:
        m = FIGURE_CURVES[which]["m"]
        mu = FIGURE_CURVES[which]["mu"]
        header = ["tau_tot", "f_tele", "regime"]
        header += [f"f_lcdt_omega{int(o)}" for o in FIGURE_OMEGAS]
        table = ReportTable(tuple(header), [], {
            "m": m, "mu": mu, "tau_marker": _fmt(math.log(m)),
        })
        for tau in taus:
            strategy = optimal_symmetric(m, float(tau), mu)
            row = [float(tau), strategy.f_max, strategy.regime]
            for omega in FIGURE_OMEGAS:
                row.append(averaged_fidelity(
                    m, float(tau), mu, GaussianAlphabet(omega * omega)))
            table.add(row)
        return table

    mu = 0.0 if which == "fig4a" else 0.4
    header = ["tau_tot"]
    for m in FIGURE_THRESHOLD_MS:
        header += [f"omega_a_th_m{m}", f"omega_c_th_m{m}"]
    table = ReportTable(tuple(header), [], {"mu": mu})
    for tau in taus:
        row = [float(tau)]
        for m in FIGURE_THRESHOLD_MS:
            th = omega_thresholds(m, float(tau), mu)
            row.append(math.sqrt(th.omega_a_sq))
            row.append(None if th.omega_c_sq is None
                       else math.sqrt(max(th.omega_c_sq, 0.0)))
        table.add(row)
    return table
