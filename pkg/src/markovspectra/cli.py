"""Command-line surface: pressure, spectrum, compare, classify, audit, sample.

Structured results go to stdout as JSON; curves and histograms go to CSV
files.  Exit codes: 0 success, 2 parse/validation error, 3 solver
non-convergence, 4 Gibbs-audit violation, 5 resource cap exceeded.
Verdict-carrying commands (compare, classify) always exit 0 on valid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .errors import (
    EnumerationCapError,
    ModelFormatError,
    NonConvergenceError,
    SolverError,
)
from .modelio import parse_model, serialize_model, word_key
from .perron import perron
from .rigidity import classify_2x2, classify_general
from .spectrum import BetaFunction, alpha_range, sample_spectrum, spectra_equal
from .sim import empirical_local_entropy
from .thermo import (
    edge_matrix,
    entropy_rate,
    gibbs_constant_audit,
    gibbs_markov,
    pressure_by_preimages,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_MATH = 3
EXIT_AUDIT = 4
EXIT_RESOURCE = 5


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def cmd_pressure(args) -> int:
    model = parse_model(args.model)
    bf = BetaFunction(model.potential)
    triple = perron(edge_matrix(bf.f2))
    out = {
        "pressure": bf.pressure,
        "lambda": triple.root,
        "left_eigenvector": list(triple.left),
        "right_eigenvector": list(triple.right),
        "residual": triple.residual,
    }
    if args.oracle_depth is not None:
        estimates = {
            str(s): pressure_by_preimages(bf.f2, s, args.oracle_depth)
            for s in range(1, bf.f2.base.n_symbols + 1)
        }
        out["oracle"] = {
            "depth": args.oracle_depth,
            "estimates": estimates,
            "max_gap": max(abs(v - bf.pressure) for v in estimates.values()),
        }
    _emit(out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    model = parse_model(args.model)
    bf = BetaFunction(model.potential)
    grid = np.arange(args.qmin, args.qmax + args.qstep / 2, args.qstep)
    curve = sample_spectrum(bf, grid)
    if args.out:
        with open(args.out, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["q", "alpha", "beta", "E", "flags"])
            for s in curve.samples:
                writer.writerow([repr(s.q), repr(s.alpha), repr(s.beta), repr(s.entropy), s.flag])
    peak = max(curve.samples, key=lambda s: s.entropy)
    _emit(
        {
            "alpha_min": curve.alpha_min,
            "alpha_max": curve.alpha_max,
            "degenerate": curve.degenerate,
            "h_top": bf.beta(0.0),
            "h_mu": entropy_rate(gibbs_markov(bf.f2)),
            "peak": {"alpha": peak.alpha, "E": peak.entropy},
            "samples": len(curve.samples),
            "csv": args.out,
        }
    )
    return EXIT_OK


def cmd_compare(args) -> int:
    f = parse_model(args.model_f).potential
    g = parse_model(args.model_g).potential
    verdict = spectra_equal(f, g, tol=args.tol)
    _emit(
        {
            "equal": verdict.equal,
            "tol": verdict.tol,
            "witness_q": verdict.witness_q,
            "beta_gap": verdict.beta_gap,
            "endpoint_gap": verdict.endpoint_gap,
        }
    )
    return EXIT_OK


def cmd_classify(args) -> int:
    model = parse_model(args.model)
    if model.base.n_symbols == 2 and model.potential.order <= 2:
        report = classify_2x2(model.potential)
    else:
        report = classify_general(model.potential)
    out = {
        "case": report.case,
        "strong_rigid": report.strong_rigid,
        "weak_rigid": report.weak_rigid,
        "in_E": report.in_E,
        "g2_member": report.g2_member,
        "g2_margin": report.g2_margin,
        "g2_collisions": [[word_key(a), word_key(b)] for a, b in report.g2_collisions],
        "condition_A1": report.condition_a1,
        "alpha_detected": report.alpha_detected,
        "twin_kind": report.twin_kind,
        "twin": serialize_model(report.twin) if report.twin is not None else None,
    }
    _emit(out)
    return EXIT_OK


def cmd_gibbs_audit(args) -> int:
    model = parse_model(args.model)
    audit = gibbs_constant_audit(model.potential, depth=args.depth)
    _emit(
        {
            "pressure": audit.pressure,
            "constant": audit.constant,
            "observed_min": audit.observed_min,
            "observed_max": audit.observed_max,
            "theoretical_min": audit.theoretical_min,
            "theoretical_max": audit.theoretical_max,
            "depth": audit.depth,
            "within_bounds": audit.within_bounds,
        }
    )
    return EXIT_OK if audit.within_bounds else EXIT_AUDIT


def cmd_sample(args) -> int:
    model = parse_model(args.model)
    mu = gibbs_markov(model.potential)
    result = empirical_local_entropy(mu, args.n, args.trials, args.seed)
    if args.out:
        with open(args.out, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["bucket_low", "bucket_high", "count"])
            for lo, hi, count in zip(result.bin_edges, result.bin_edges[1:], result.counts):
                writer.writerow([repr(float(lo)), repr(float(hi)), int(count)])
    _emit(
        {
            "mean": result.mean,
            "std_error": result.std_error,
            "target_entropy_rate": entropy_rate(mu),
            "n": result.n,
            "trials": result.trials,
            "seed": result.seed,
            "csv": args.out,
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markovspectra",
        description="Gibbs measures, pressure and entropy spectra on Markov shifts",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pressure", help="topological pressure and Perron data")
    p.add_argument("model")
    p.add_argument("--oracle-depth", type=int, default=None)
    p.set_defaults(handler=cmd_pressure)

    p = sub.add_parser("spectrum", help="sample the entropy spectrum curve")
    p.add_argument("model")
    p.add_argument("--qmin", type=float, default=-10.0)
    p.add_argument("--qmax", type=float, default=10.0)
    p.add_argument("--qstep", type=float, default=0.5)
    p.add_argument("--out", default=None, help="CSV output path")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("compare", help="decide spectrum equality of two models")
    p.add_argument("model_f")
    p.add_argument("model_g")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("classify", help="rigidity classification report")
    p.add_argument("model")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("gibbs-audit", help="audit the defining Gibbs inequality")
    p.add_argument("model")
    p.add_argument("--depth", type=int, default=12)
    p.set_defaults(handler=cmd_gibbs_audit)

    p = sub.add_parser("sample", help="Monte-Carlo local entropy exponents")
    p.add_argument("model")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="histogram CSV output path")
    p.set_defaults(handler=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ModelFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NonConvergenceError, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
