"""Acceptance checks: every headline result the package must reproduce.

Each criterion is a function returning (passed, detail).  ``run_selftest``
executes all of them and prints one pass/fail line per criterion; the CLI
``selftest`` subcommand and the test suite both drive this module.
"""

from __future__ import annotations

import math
import time

import numpy as np
from scipy.optimize import brentq

from .gaussian import ppt_min_symplectic, symplectic_eigenvalues
from .lcdt import (
    GaussianAlphabet,
    LcdtConfig,
    admissible_amplitude_sq,
    averaged_fidelity,
    averaged_fidelity_diagnostics,
    averaged_fidelity_quadrature,
    lcdt_fidelity,
    lcdt_pipeline_state,
    optimize_cloner_location,
    scan_cloner_location,
)
from .source import Sum1Params, check_full_inseparability, \
    covariance_from_fock_oracle, covariance_matrix
from .telecloning import (
    TelecloningConfig,
    clone_fidelity_closed,
    fidelity_regime_a,
    fidelity_regime_c,
    monte_carlo_protocol,
    noisy_support,
    numeric_optimal,
    optimal_symmetric,
    telecloning_pipeline,
    useful_time_thresholds,
)
from .experiments import reproduce_figure, reproduce_table1


def _random_configs(rng, count, m_max=4, tau_max=2.0, mu_max=1.0, n_max=2.0):
    configs = []
    for _ in range(count):
        m = int(rng.integers(2, m_max + 1))
        tau_tot = rng.uniform(0.0, tau_max)
        tau0 = rng.uniform(0.0, tau_tot)
        mu = rng.uniform(0.0, mu_max)
        photons = tuple(rng.uniform(0.0, n_max, size=m))
        configs.append(TelecloningConfig(Sum1Params(photons), tau0,
                                         tau_tot - tau0, mu))
    return configs


def criterion_cloning_saturation():
    """Optimized nonlocal fidelity saturates m/(2m-1) for short lines."""
    worst_closed = 0.0
    worst_numeric = 0.0
    for m in range(2, 9):
        bound = m / (2.0 * m - 1.0)
        for tau in (0.1, 0.5 * math.log(m), 0.9 * math.log(m)):
            closed = optimal_symmetric(m, tau, 0.0)
            worst_closed = max(worst_closed, abs(closed.f_max - bound))
            numeric = numeric_optimal(m, tau, 0.0)
            worst_numeric = max(worst_numeric, abs(numeric.f_max - bound))
    ok = worst_closed < 1e-12 and worst_numeric < 1e-6
    return ok, (f"closed-form deviation {worst_closed:.3e} (tol 1e-12), "
                f"numeric deviation {worst_numeric:.3e} (tol 1e-6)")


def criterion_pipeline_equivalence():
    """Matrix pipeline reproduces the closed-form fidelity and clone
    covariance on random configurations."""
    rng = np.random.default_rng(20240521)
    worst_f = 0.0
    worst_cov = 0.0
    for config in _random_configs(rng, 200):
        clones = telecloning_pipeline(config, 0.7 - 0.4j)
        for h, clone in enumerate(clones, start=1):
            f_closed = clone_fidelity_closed(config, h)
            worst_f = max(worst_f, abs(clone.fidelity - f_closed))
            expected = (1.0 / f_closed - 0.5) * np.eye(2)
            worst_cov = max(worst_cov,
                            np.abs(clone.clone_cov - expected).max())
    ok = worst_f < 1e-10 and worst_cov < 1e-10
    return ok, (f"fidelity deviation {worst_f:.3e}, covariance deviation "
                f"{worst_cov:.3e} (tol 1e-10) over 200 random configs")


def criterion_fock_oracle():
    """Truncated-Fock expectation values reproduce the closed-form
    covariance matrix."""
    worst = 0.0
    for params in (Sum1Params((0.2, 0.2)), Sum1Params((0.1, 0.1, 0.1))):
        closed = covariance_matrix(params).cov
        oracle = covariance_from_fock_oracle(params, cutoff=40)
        worst = max(worst, np.abs(closed - oracle).max())
    ok = worst < 1e-6
    return ok, f"max entrywise deviation {worst:.3e} (tol 1e-6)"


def criterion_monte_carlo():
    """Empirical clone moments agree with the closed forms and are
    reproducible for a fixed seed."""
    rng = np.random.default_rng(7)
    config = TelecloningConfig(Sum1Params(tuple(rng.uniform(0.1, 1.5, 2))),
                               rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                               rng.uniform(0.0, 0.8))
    alpha = 1 + 2j
    run1 = monte_carlo_protocol(config, alpha, n_samples=100_000, seed=99)
    run2 = monte_carlo_protocol(config, alpha, n_samples=100_000, seed=99)
    reproducible = all(
        np.array_equal(a.mean, b.mean) and np.array_equal(a.cov, b.cov)
        for a, b in zip(run1, run2))
    target_mean = math.sqrt(2.0) * np.array([alpha.real, alpha.imag])
    worst_pull = 0.0
    for h, est in enumerate(run1, start=1):
        f = clone_fidelity_closed(config, h)
        target_cov = (1.0 / f - 0.5) * np.eye(2)
        worst_pull = max(worst_pull,
                         np.abs((est.mean - target_mean) / est.mean_se).max(),
                         np.abs((est.cov - target_cov) / est.cov_se).max())
    ok = reproducible and worst_pull < 5.0
    return ok, (f"max pull {worst_pull:.2f} standard errors (tol 5), "
                f"seed-reproducible: {reproducible}")


def criterion_optimum_table():
    """Closed-form optima match the direct numeric search across regimes,
    and the fidelity is continuous at the short-line regime boundary."""
    table = reproduce_table1()
    regimes = set()
    worst_f = 0.0
    worst_param = 0.0
    for row in table.rows:
        (_, _, _, regime, n_opt, tau0_opt, f_max,
         n_num, tau0_num, f_num, _) = row
        regimes.add(regime)
        worst_f = max(worst_f, abs(f_num - f_max))
        if math.isfinite(n_opt) and math.isfinite(n_num):
            worst_param = max(
                worst_param,
                abs(n_num - n_opt) / max(abs(n_opt), 1e-12),
                abs(tau0_num - tau0_opt) / max(abs(tau0_opt), 1e-12))
    worst_boundary = 0.0
    for m in (2, 3, 5):
        for mu in (0.0, 0.2):
            tau = math.log(m)
            worst_boundary = max(worst_boundary,
                                 abs(fidelity_regime_a(m, tau, mu)
                                     - fidelity_regime_c(m, tau, mu)))
    ok = (worst_f < 1e-6 and worst_param < 1e-4
          and worst_boundary < 1e-9 and regimes >= {"A", "B", "C"})
    return ok, (f"fidelity deviation {worst_f:.3e} (tol 1e-6), parameter "
                f"deviation {worst_param:.3e} (tol 1e-4 rel), boundary gap "
                f"{worst_boundary:.3e} (tol 1e-9), regimes {sorted(regimes)}")


def criterion_classical_limit():
    """Optimized fidelity equals 1/2 exactly at the usefulness thresholds."""
    tau_a, _ = useful_time_thresholds(2, 0.4)
    _, tau_c = useful_time_thresholds(2, 1.0)
    gap_a = abs(optimal_symmetric(2, tau_a, 0.4).f_max - 0.5)
    gap_c = abs(optimal_symmetric(2, tau_c, 1.0).f_max - 0.5)
    value_a_ok = abs(tau_a - math.log(4.84 / 1.28)) < 1e-12
    value_c_ok = abs(tau_c - math.log(2.0)) < 1e-12
    ok = gap_a < 1e-9 and gap_c < 1e-9 and value_a_ok and value_c_ok
    return ok, (f"tau_a={tau_a:.6f} (expect ln(4.84/1.28)), gap {gap_a:.3e}; "
                f"tau_c={tau_c:.6f} (expect ln 2), gap {gap_c:.3e} "
                f"(tol 1e-9)")


def criterion_cloner_placement():
    """Below the amplitude threshold the cloner belongs at the sender;
    above it the stationary point matches the closed form with fidelity
    below 1/e."""
    m, tau, mu = 2, 1.0, 0.0
    crit = admissible_amplitude_sq(m, tau, mu)
    boundary_ok = True
    for frac in (0.0, 0.3, 0.7, 1.0):
        alpha = math.sqrt(frac * crit)
        best_t, _ = scan_cloner_location(m, tau, mu, alpha)
        boundary_ok &= abs(best_t - tau) < 2e-3
    placement = optimize_cloner_location(m, tau, mu, 10.0)  # |alpha|^2 = 100
    best_t, best_f = scan_cloner_location(m, tau, mu, 10.0,
                                          tauc_min=placement.tau_c_opt - 2.0,
                                          tauc_max=tau)
    tcopt_ok = placement.interior and abs(best_t - placement.tau_c_opt) < 1e-6
    fid_ok = (abs(best_f - placement.f_at_opt) < 1e-9
              and placement.f_at_opt < 1.0 / math.e)
    ok = boundary_ok and tcopt_ok and fid_ok
    return ok, (f"boundary optimum at sender: {boundary_ok}; stationary "
                f"point gap {abs(best_t - placement.tau_c_opt):.3e} "
                f"(tol 1e-6), fidelity {placement.f_at_opt:.6f} < 1/e")


def criterion_averaged_fidelity():
    """Closed-form alphabet average matches 2-D quadrature, and the
    crossover width reproduces its closed form independent of mu."""
    worst_quad = 0.0
    grid = [(m, tau, mu, om)
            for m in (2, 3)
            for tau in (0.3, 1.0, 2.5)
            for mu in (0.0, 0.4)
            for om in (0.7, 2.0)][:20]
    for m, tau, mu, om in grid:
        alphabet = GaussianAlphabet(om * om)
        worst_quad = max(worst_quad,
                         abs(averaged_fidelity(m, tau, mu, alphabet)
                             - averaged_fidelity_quadrature(m, tau, mu,
                                                            alphabet)))
    target = (3.0 + 2.0 * math.sqrt(2.0)) / 2.0
    roots = []
    for mu in (0.0, 0.4):
        tau = math.log(2.0)
        f_tele = optimal_symmetric(2, tau, mu).f_max

        def gap(om_sq, mu=mu, tau=tau, f_tele=f_tele):
            return f_tele - averaged_fidelity(2, tau, mu,
                                              GaussianAlphabet(om_sq))

        roots.append(brentq(gap, 1e-9, 50.0, xtol=1e-12))
    worst_root = max(abs(r - target) for r in roots)
    mu_indep = abs(roots[0] - roots[1])
    diag = averaged_fidelity_diagnostics(2, math.log(2.0), 0.0,
                                         GaussianAlphabet(1.0))
    ok = worst_quad < 1e-6 and worst_root < 1e-6 and mu_indep < 1e-9
    return ok, (f"quadrature deviation {worst_quad:.3e} (tol 1e-6), "
                f"crossover root deviation {worst_root:.3e} from "
                f"(3+2*sqrt(2))/2, mu-dependence {mu_indep:.3e}; "
                f"no-offset-variant gap at (m=2, tau=ln2, Omega=1): "
                f"{diag['variant_minus_quadrature']:+.6f} (diagnostic only)")


def criterion_figure_datasets():
    """Qualitative shape of the reference curve datasets."""
    fig2a = reproduce_figure("fig2a")
    idx_tele = fig2a.header.index("f_tele")
    idx_om2 = fig2a.header.index("f_lcdt_omega2")
    violations = [(row[0], row[idx_tele], row[idx_om2])
                  for row in fig2a.rows
                  if row[idx_tele] < row[idx_om2] - 1e-12]
    fig2a_ok = not violations

    mono_m_ok = True
    mu_mono_ok = True
    fig4a = reproduce_figure("fig4a")
    fig4b = reproduce_figure("fig4b")
    for row in fig4a.rows:
        a_cols = [row[fig4a.header.index(f"omega_a_th_m{m}")]
                  for m in (2, 4, 8, 16)]
        mono_m_ok &= all(x < y for x, y in zip(a_cols, a_cols[1:]))
    idx_c2a = fig4a.header.index("omega_c_th_m2")
    idx_c2b = fig4b.header.index("omega_c_th_m2")
    for row_a, row_b in zip(fig4a.rows, fig4b.rows):
        va, vb = row_a[idx_c2a], row_b[idx_c2b]
        if va is not None and vb is not None:
            mu_mono_ok &= vb >= va - 1e-12
    detail = (f"threshold growth in m: {mono_m_ok}; threshold growth in mu: "
              f"{mu_mono_ok}; ")
    if fig2a_ok:
        detail += "nonlocal curve dominates the Omega=2 local curve"
    else:
        first = violations[0]
        detail += (f"nonlocal curve falls below the Omega=2 local curve on "
                   f"{len(violations)}/200 short-line points (first at "
                   f"tau={first[0]:.4f}: {first[1]:.4f} < {first[2]:.4f}); "
                   "the curves provably cross at tau = 2 ln(9/7) under the "
                   "conventions fixed by the crossover thresholds")
    return fig2a_ok and mono_m_ok and mu_mono_ok, detail


def criterion_physicality():
    """Every constructed state is physical and the entangled source is
    inseparable across all bipartitions."""
    rng = np.random.default_rng(11)
    worst_nu = math.inf
    for config in _random_configs(rng, 20):
        state, _ = noisy_support(config)
        worst_nu = min(worst_nu, symplectic_eigenvalues(state.cov).min())
        for clone in telecloning_pipeline(config, 1.0 + 0.5j):
            worst_nu = min(worst_nu,
                           symplectic_eigenvalues(clone.clone_cov).min())
    for m in (2, 3):
        cfg = LcdtConfig(m, 0.4, 0.6, 0.3)
        state = lcdt_pipeline_state(cfg, 1.2j)
        worst_nu = min(worst_nu, symplectic_eigenvalues(state.cov).min())
    physical = worst_nu >= 0.5 - 1e-9

    insep_ok = True
    worst_ppt = 0.0
    for m in (2, 3):
        params = Sum1Params((0.5,) * m)
        for _, nu in check_full_inseparability(params):
            insep_ok &= nu < 0.5
            worst_ppt = max(worst_ppt, nu)
    ok = physical and insep_ok
    return ok, (f"min symplectic eigenvalue {worst_nu:.12f} (>= 0.5 - 1e-9); "
                f"largest transposed eigenvalue {worst_ppt:.6f} < 0.5 "
                f"across all bipartitions: {insep_ok}")


CRITERIA = (
    ("1", "optimal-cloning saturation", criterion_cloning_saturation),
    ("2", "closed form vs matrix pipeline", criterion_pipeline_equivalence),
    ("3", "truncated-Fock covariance oracle", criterion_fock_oracle),
    ("4", "Monte Carlo protocol", criterion_monte_carlo),
    ("5", "optimum table vs numeric search", criterion_optimum_table),
    ("6", "classical-limit time thresholds", criterion_classical_limit),
    ("7", "cloner placement", criterion_cloner_placement),
    ("8", "averaged fidelity and crossover width", criterion_averaged_fidelity),
    ("9", "figure-level dataset checks", criterion_figure_datasets),
    ("10", "physicality and inseparability", criterion_physicality),
)


def run_selftest(stream=None) -> bool:
    """Run every criterion, print one line per result, return overall pass."""
    import sys

    stream = stream or sys.stdout
    all_ok = True
    for cid, name, func in CRITERIA:
        start = time.perf_counter()
        ok, detail = func()
        elapsed = time.perf_counter() - start
        all_ok &= ok
        stream.write(f"{'PASS' if ok else 'FAIL'} criterion {cid} "
                     f"({name}) [{elapsed:.1f}s]: {detail}\n")
    stream.write("selftest: " + ("all criteria passed\n"
                                 if all_ok else "FAILURES present\n"))
    return all_ok
