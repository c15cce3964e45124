"""Command-line front end.

Subcommands: compare, teleclone-fidelity, lcdt-fidelity, optimize,
thresholds, sweep, reproduce, selftest.  Results are emitted as CSV with a
'#'-prefixed provenance header, to stdout or to --out.  An optional JSON
config document may supply defaults for any flag; explicit flags win.

Exit codes: 0 success, 2 domain error, 3 numerical failure, 4 selftest
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .acceptance import run_selftest
from .errors import DomainError, NumericalError
from .experiments import (
    COMPARISON_HEADER,
    FIGURES,
    ReportTable,
    SweepSpec,
    compare,
    reproduce_figure,
    reproduce_table1,
    run_sweep,
)
from .lcdt import (
    GaussianAlphabet,
    LcdtConfig,
    averaged_fidelity,
    lcdt_fidelity,
    omega_thresholds,
)
from .telecloning import (
    TelecloningConfig,
    clone_fidelity_closed,
    monte_carlo_protocol,
    numeric_optimal,
    optimal_symmetric,
    useful_time_thresholds,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3
EXIT_SELFTEST = 4


def _add_common(parser, *names):
    flags = {
        "m": dict(type=int, help="number of receivers / clones"),
        "tau": dict(type=float, dest="tau",
                    help="total effective propagation time"),
        "tau0": dict(type=float, help="pre-split propagation time"),
        "mu": dict(type=float, help="mean thermal photons of the channels"),
        "omega": dict(type=float, help="Gaussian alphabet width Omega"),
        "n-photons": dict(type=float, dest="n_photons",
                          help="mean photons per receiver mode of the source"),
        "alpha-re": dict(type=float, dest="alpha_re",
                         help="real part of the input amplitude"),
        "alpha-im": dict(type=float, dest="alpha_im",
                         help="imaginary part of the input amplitude"),
        "samples": dict(type=int, help="Monte Carlo sample count"),
        "seed": dict(type=int, help="Monte Carlo seed"),
    }
    for name in names:
        parser.add_argument(f"--{name}", default=None, **flags[name])
    parser.add_argument("--out", default=None, help="output file path")
    parser.add_argument("--format", default="csv", choices=["csv"],
                        help="output format")
    parser.add_argument("--config", default=None,
                        help="JSON document with default flag values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvclone",
        description="Compare nonlocal and local distribution of a coherent "
                    "state through noisy channels.")
    parser.add_argument("--version", action="version",
                        version=f"cvclone {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="optimized nonlocal vs averaged "
                                       "local fidelity at one point")
    _add_common(p, "m", "tau", "mu", "omega")

    p = sub.add_parser("teleclone-fidelity",
                       help="clone fidelity of the nonlocal protocol")
    _add_common(p, "m", "tau", "tau0", "mu", "n-photons",
                "alpha-re", "alpha-im", "samples", "seed")

    p = sub.add_parser("lcdt-fidelity",
                       help="clone fidelity of the local strategy")
    _add_common(p, "m", "tau", "tau0", "mu", "omega",
                "alpha-re", "alpha-im")

    p = sub.add_parser("optimize",
                       help="optimal source strength and placement")
    _add_common(p, "m", "tau", "mu")

    p = sub.add_parser("thresholds",
                       help="usefulness times and crossover widths")
    _add_common(p, "m", "tau", "mu")

    p = sub.add_parser("sweep", help="sweep one variable, compare per step")
    p.add_argument("--variable", required=True,
                   choices=["tau_tot", "mu", "omega", "m"])
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    _add_common(p, "m", "tau", "mu", "omega")

    p = sub.add_parser("reproduce",
                       help="reference datasets (optimum table, figures)")
    p.add_argument("what", choices=["table1", *FIGURES])
    _add_common(p)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)
    return parser


def _apply_config(args) -> None:
    path = getattr(args, "config", None)
    if not path:
        return
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise DomainError("config document must be a JSON object")
    for key, value in doc.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, value)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise DomainError(
            "missing required values: "
            + ", ".join("--" + n.replace("_", "-") for n in missing))


def _emit(table: ReportTable, args) -> None:
    if args.out:
        table.write(args.out)
    else:
        sys.stdout.write(table.to_csv())


def _alpha(args) -> complex:
    return complex(args.alpha_re or 0.0, args.alpha_im or 0.0)


def _cmd_compare(args) -> int:
    _require(args, "m", "tau", "mu", "omega")
    rec = compare(args.m, args.tau, args.mu, args.omega)
    table = ReportTable(COMPARISON_HEADER, [rec.row()])
    _emit(table, args)
    return EXIT_OK


def _cmd_teleclone(args) -> int:
    _require(args, "m", "tau", "mu")
    tau0 = args.tau0 if args.tau0 is not None else args.tau
    if tau0 > args.tau:
        raise DomainError("--tau0 cannot exceed --tau")
    if args.n_photons is None:
        raise DomainError("--n-photons is required "
                          "(use `optimize` for the optimal source)")
    config = TelecloningConfig.symmetric(args.m, args.n_photons, tau0,
                                         args.tau - tau0, args.mu)
    if args.samples:
        seed = args.seed if args.seed is not None else 0
        estimates = monte_carlo_protocol(config, _alpha(args), args.samples,
                                         seed)
        table = ReportTable(
            ("clone", "fidelity_mc", "fidelity_closed", "mean_q", "mean_p",
             "se_mean_q", "se_mean_p"),
            [], {"samples": args.samples, "seed": seed})
        for h, est in enumerate(estimates, start=1):
            table.add((h, est.fidelity, clone_fidelity_closed(config, h),
                       est.mean[0], est.mean[1], est.mean_se[0],
                       est.mean_se[1]))
    else:
        table = ReportTable(("m", "tau_tot", "tau0", "mu", "n_photons",
                             "fidelity"), [])
        table.add((args.m, args.tau, tau0, args.mu, args.n_photons,
                   clone_fidelity_closed(config, 1)))
    _emit(table, args)
    return EXIT_OK


def _cmd_lcdt(args) -> int:
    _require(args, "m", "tau", "mu")
    tau0 = args.tau0 if args.tau0 is not None else 0.0
    if tau0 > args.tau:
        raise DomainError("--tau0 cannot exceed --tau")
    config = LcdtConfig(args.m, tau0, args.tau - tau0, args.mu)
    if args.omega is not None:
        if tau0 != 0.0:
            raise DomainError("alphabet averaging assumes the cloner at the "
                              "sender (omit --tau0)")
        value = averaged_fidelity(args.m, args.tau, args.mu,
                                  GaussianAlphabet(args.omega ** 2))
        header = ("m", "tau_tot", "mu", "omega", "fidelity_averaged")
        row = (args.m, args.tau, args.mu, args.omega, value)
    else:
        value = lcdt_fidelity(config, _alpha(args))
        header = ("m", "tau_tot", "tau0", "mu", "alpha_re", "alpha_im",
                  "fidelity")
        row = (args.m, args.tau, tau0, args.mu, _alpha(args).real,
               _alpha(args).imag, value)
    table = ReportTable(header, [row])
    _emit(table, args)
    return EXIT_OK


def _cmd_optimize(args) -> int:
    _require(args, "m", "tau", "mu")
    closed = optimal_symmetric(args.m, args.tau, args.mu)
    numeric = numeric_optimal(args.m, args.tau, args.mu)
    table = ReportTable(
        ("m", "tau_tot", "mu", "regime", "n_opt", "tau0_opt", "f_max",
         "n_opt_numeric", "tau0_opt_numeric", "f_max_numeric"), [])
    table.add((args.m, args.tau, args.mu, closed.regime, closed.n_opt,
               closed.tau0_opt, closed.f_max, numeric.n_opt,
               numeric.tau0_opt, numeric.f_max))
    _emit(table, args)
    return EXIT_OK


def _cmd_thresholds(args) -> int:
    _require(args, "m", "mu")
    tau_a, tau_c = useful_time_thresholds(args.m, args.mu)
    header = ["m", "mu", "tau_a_th", "tau_c_th"]
    row = [args.m, args.mu, tau_a, tau_c]
    if args.tau is not None:
        th = omega_thresholds(args.m, args.tau, args.mu)
        header += ["tau_tot", "omega_a_sq", "omega_c_sq"]
        row += [args.tau, th.omega_a_sq, th.omega_c_sq]
    table = ReportTable(tuple(header), [tuple(row)])
    _emit(table, args)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    fixed = {}
    for key, attr in (("m", "m"), ("tau_tot", "tau"), ("mu", "mu"),
                      ("omega", "omega")):
        value = getattr(args, attr, None)
        if value is not None:
            fixed[key] = value
    spec = SweepSpec(args.variable, args.start, args.stop, args.steps, fixed)
    _emit(run_sweep(spec), args)
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    if args.what == "table1":
        table = reproduce_table1()
    else:
        table = reproduce_figure(args.what)
    _emit(table, args)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            ok = run_selftest(fh)
    else:
        ok = run_selftest(sys.stdout)
    return EXIT_OK if ok else EXIT_SELFTEST


COMMANDS = {
    "compare": _cmd_compare,
    "teleclone-fidelity": _cmd_teleclone,
    "lcdt-fidelity": _cmd_lcdt,
    "optimize": _cmd_optimize,
    "thresholds": _cmd_thresholds,
    "sweep": _cmd_sweep,
    "reproduce": _cmd_reproduce,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
        return COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
