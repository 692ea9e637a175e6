"""Command-line entry point: ``dispersim {cases,prob,mi,sweep,figure}``."""

from __future__ import annotations

import argparse
import sys

from .analytic import analytic_distribution, phase_fourier
from .fidelity import InvalidDistribution, PhaseGrid, mutual_information
from .oracle import spdc_distribution, spdc_moments
from .phase import DispersionParams
from .quadrature import NonConvergence, QuadratureSpec
from .states import CaseId, CrystalParams, case_catalog
from .sweep import ConfigError, default_threads, emit_csv, figure_preset, parse_config, preset_names, run_sweep

EXIT_OK, EXIT_INVALID, EXIT_NONCONVERGENCE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _point_args(p):
    p.add_argument("case", help="case letter A-L")
    p.add_argument("--alphaL", type=float, default=0.0, help="first-order dispersion times arm length")
    p.add_argument("--betaL", type=float, default=0.0, help="second-order dispersion times arm length")
    p.add_argument("--sigma", type=float, default=1.0, help="squared inverse bandwidth")
    p.add_argument("--b", type=float, default=10.0, help="case L: lambda_p * crystal length")
    p.add_argument("--lambda-ratio", type=float, default=5.0, help="case L: lambda_big / lambda_p")
    p.add_argument("--rel-tol", type=float, default=1e-6, help="case L cubature tolerance")


def _build_parser():
    parser = _Parser(prog="dispersim", description=__doc__)
    parser.add_argument("--threads", type=int, default=None, help="sweep worker threads (default: all cores)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("cases", help="list the input cases")

    prob = sub.add_parser("prob", help="outcome distribution at one phase")
    _point_args(prob)
    prob.add_argument("--phi0", type=float, default=0.0)

    mi = sub.add_parser("mi", help="mutual information in bits")
    _point_args(mi)
    mi.add_argument("--grid", type=int, default=512, help="phase grid points")

    sweep = sub.add_parser("sweep", help="run a sweep described by a JSON file")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--out", default=None)
    sweep.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    fig = sub.add_parser("figure", help="run a built-in figure sweep")
    fig.add_argument("name", help=", ".join(preset_names()))
    fig.add_argument("--out", default=None)
    fig.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    return parser


def _point(ns):
    case = CaseId.parse(ns.case)
    params = DispersionParams(ns.alphaL, ns.betaL, ns.sigma)
    crystal = CrystalParams.from_ratios(ns.b, ns.lambda_ratio) if case is CaseId.L else None
    return case, params, crystal, QuadratureSpec(rel_tol=ns.rel_tol)


def _write(text, out):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(ns) -> int:
    if ns.command == "cases":
        for c in case_catalog():
            print(f"{c.id.value}  {c.photons}  {c.interferometer.value:<3}  {c.family.value:<8}  {c.correlation.value}")
        return EXIT_OK
    if ns.command == "prob":
        case, params, crystal, quad = _point(ns)
        params = params.with_phase(ns.phi0)
        if case is CaseId.L:
            dist = spdc_distribution(params, crystal, quad)
        else:
            dist = analytic_distribution(case, params)
        for (nc, nd), p in zip(dist.labels, dist.probs):
            print(f"P({nc},{nd})={p:.12f}")
        return EXIT_OK
    if ns.command == "mi":
        case, params, crystal, quad = _point(ns)
        if case is CaseId.L:
            series = spdc_moments(params, crystal, quad).series()
        else:
            series = phase_fourier(case, params)
        print(f"{mutual_information(series, PhaseGrid(ns.grid)).bits:.12f}")
        return EXIT_OK

    threads = ns.threads if ns.threads is not None else default_threads()
    if threads < 1:
        raise ConfigError("--threads", "must be a positive integer")
    if ns.command == "sweep":
        with open(ns.config) as fh:
            config = parse_config(fh.read())
    else:
        config = figure_preset(ns.name)
    table = run_sweep(config, threads)
    _write(emit_csv(table), ns.out)
    failed = [r for r in table.rows if r.failure]
    for r in failed:
        print(f"dispersim: {r.case.value} at {config.sweep_param}={r.value:g}: {r.failure}", file=sys.stderr)
    if any("NonConvergence" in r.failure for r in failed):
        return EXIT_NONCONVERGENCE
    return EXIT_INVALID if failed else EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(ns)
    except NonConvergence as exc:
        print(f"dispersim: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ValueError, InvalidDistribution, OSError) as exc:
        print(f"dispersim: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
