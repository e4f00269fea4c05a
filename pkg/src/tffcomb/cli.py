"""Command-line front end.

Exit codes: 0 affirmative/success, 1 negative decision or failed check,
2 usage error, 3 convergence failure in the numerical realizer.  Every
subcommand takes ``--json`` for machine-readable output; rationals are
written as "p/q" and rank lists as comma-separated integers.  The env var
TFF_THREADS is honored as an upper bound on internal parallelism (the
current implementation is sequential, so any value runs identically).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import configmat, dualities, realize, tffcore
from .configmat import ConfigMatrix
from .errors import ConvergenceFailure, TFFCombError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _parse_ranks(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad rank list {text!r}")
    if not parts or any(x <= 0 for x in parts):
        raise argparse.ArgumentTypeError("ranks must be positive integers")
    return parts


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}")


def _canonical_ranks(ranks: tuple[int, ...]) -> tuple[int, ...]:
    ordered = tuple(sorted(ranks, reverse=True))
    if ordered != ranks:
        print(
            f"warning: ranks {list(ranks)} not weakly decreasing;"
            f" using {list(ordered)}",
            file=sys.stderr,
        )
    return ordered


def thread_cap() -> int:
    """Upper bound on worker parallelism from TFF_THREADS (>= 1)."""
    try:
        return max(1, int(os.environ.get("TFF_THREADS", "1")))
    except ValueError:
        return 1


def _emit(payload: dict, text: str, as_json: bool, out: str | None = None) -> None:
    body = json.dumps(payload, indent=2) if as_json else text
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
    else:
        print(body)


def _matrix_text(a: ConfigMatrix) -> str:
    width = max(len(str(x)) for row in a.entries for x in row)
    lines = []
    for row in a.entries:
        cells = []
        col = 0
        for k, r in enumerate(a.ranks):
            cells.append(" ".join(str(x).rjust(width) for x in row[col:col + r]))
            col += r
        lines.append(" | ".join(cells))
    return "\n".join(lines)


def _load_config(path: str) -> ConfigMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return ConfigMatrix.from_json_dict(json.load(fh))


def _cmd_decide(args) -> int:
    ranks = _canonical_ranks(args.ranks)
    tight, cert = tffcore.decide(ranks, args.dim, certificate=True)
    alpha = Fraction(sum(ranks), args.dim)
    payload = {
        "dim": args.dim,
        "ranks": list(ranks),
        "alpha": str(alpha),
        "tight": tight,
    }
    if tight and cert is not None:
        payload["certificate"] = cert.to_json_dict()
        text = (
            f"{list(ranks)} in dimension {args.dim}: tight, bound {alpha}\n"
            + _matrix_text(cert)
        )
    else:
        text = f"{list(ranks)} in dimension {args.dim}: not tight"
    _emit(payload, text, args.json)
    return EXIT_OK if tight else EXIT_NEGATIVE


def _cmd_count(args) -> int:
    ranks = _canonical_ranks(args.ranks)
    count = configmat.count_configs(ranks, args.dim)
    payload = {"dim": args.dim, "ranks": list(ranks), "count": count}
    _emit(payload, str(count), args.json)
    return EXIT_OK


def _cmd_certificate(args) -> int:
    ranks = _canonical_ranks(args.ranks)
    cert = configmat.find_config(ranks, args.dim)
    if cert is None:
        print(f"no certificate for {list(ranks)} in dimension {args.dim}",
              file=sys.stderr)
        return EXIT_NEGATIVE
    _emit(cert.to_json_dict(), _matrix_text(cert), args.json, args.out)
    return EXIT_OK


def _cmd_tableau(args) -> int:
    if args.infile:
        cert = _load_config(args.infile)
    else:
        ranks = _canonical_ranks(args.ranks)
        cert = configmat.find_config(ranks, args.dim)
        if cert is None:
            print(f"no certificate for {list(ranks)} in dimension {args.dim}",
                  file=sys.stderr)
            return EXIT_NEGATIVE
    text = configmat.render_tableaux(cert)
    payload = {
        "dim": cert.dim,
        "ranks": list(cert.ranks),
        "cells": [
            [[k, v] for (k, v) in row] for row in configmat.tableau_cells(cert)
        ],
    }
    _emit(payload, text, args.json)
    return EXIT_OK


def _maximal_payload(alpha: Fraction, dim: int) -> dict:
    tops = tffcore.maximal_elements(alpha, dim)
    return {
        "alpha": str(alpha),
        "dim": dim,
        "maximal": [list(t) for t in tops],
    }


def _cmd_maximal(args) -> int:
    if args.all:
        tables = []
        for dim in range(1, args.max_dim + 1):
            for total in range(dim, 2 * dim + 1):
                alpha = Fraction(total, dim)
                tables.append(_maximal_payload(alpha, dim))
        payload = {"max_dim": args.max_dim, "tables": tables}
        text = "\n".join(
            f"dim {t['dim']}  alpha {t['alpha']}: "
            + "  ".join(str(m) for m in t["maximal"])
            for t in tables
        )
        _emit(payload, text, args.json, args.out)
        return EXIT_OK
    if args.alpha is None or args.dim is None:
        print("maximal: need --alpha and --dim (or --all)", file=sys.stderr)
        return EXIT_USAGE
    payload = _maximal_payload(args.alpha, args.dim)
    text = "\n".join(str(m) for m in payload["maximal"])
    _emit(payload, text, args.json, args.out)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    seqs = tffcore.enumerate_tff(args.alpha, args.dim)
    payload = {
        "alpha": str(Fraction(args.alpha)),
        "dim": args.dim,
        "sequences": [list(s) for s in seqs],
    }
    _emit(payload, "\n".join(str(list(s)) for s in seqs), args.json)
    return EXIT_OK


def _cmd_dual(args) -> int:
    if args.alpha_reduce:
        if args.alpha is None:
            print("dual --alpha-reduce needs --alpha", file=sys.stderr)
            return EXIT_USAGE
        new_alpha, new_dim = dualities.alpha_reduce(args.alpha, args.dim)
        payload = {
            "dual": "alpha-reduce",
            "alpha": str(new_alpha),
            "dim": new_dim,
            "source_alpha": str(Fraction(args.alpha)),
            "source_dim": args.dim,
        }
        _emit(payload, f"alpha {new_alpha}  dim {new_dim}", args.json)
        return EXIT_OK
    if args.ranks is None:
        print("dual: need --ranks", file=sys.stderr)
        return EXIT_USAGE
    ranks = _canonical_ranks(args.ranks)
    if args.spatial:
        kind = "spatial"
        new_ranks, new_dim = dualities.spatial_dual(ranks, args.dim)
    elif args.naimark:
        kind = "naimark"
        new_ranks, new_dim = dualities.naimark_dual(ranks, args.dim)
    else:
        kind = "strip"
        new_ranks, new_dim = dualities.recur_strip(ranks, args.dim)
    payload = {
        "dual": kind,
        "source_ranks": list(ranks),
        "source_dim": args.dim,
        "ranks": list(new_ranks),
        "dim": new_dim,
    }
    _emit(payload, f"ranks {list(new_ranks)}  dim {new_dim}", args.json)
    return EXIT_OK


def _cmd_dual_config(args) -> int:
    cert = _load_config(args.infile)
    if args.spatial:
        dual = dualities.config_spatial_dual(cert)
        kind = "spatial"
    else:
        dual = dualities.config_naimark_dual(cert)
        kind = "naimark"
    payload = {"dual": kind, "source_ranks": list(cert.ranks)}
    payload.update(dual.to_json_dict())
    _emit(payload, _matrix_text(dual), args.json, args.out)
    return EXIT_OK


def _cmd_check_bounds(args) -> int:
    ranks = _canonical_ranks(args.ranks)
    alpha = args.alpha if args.alpha is not None else Fraction(sum(ranks), args.dim)
    padded = ranks + (0, 0, 0)
    results: dict[str, bool | None] = {}
    if 1 < alpha < 2:
        results["first3"] = tffcore.first3_check(
            padded[0], padded[1], padded[2], alpha, args.dim
        )
    else:
        results["first3"] = None
    results["k_block"] = tffcore.k_block_bound(ranks, args.dim, alpha)
    failed = [name for name, ok in results.items() if ok is False]
    payload = {
        "dim": args.dim,
        "ranks": list(ranks),
        "alpha": str(Fraction(alpha)),
        "checks": {k: v for k, v in results.items()},
    }
    lines = [
        f"{name}: {'n/a' if ok is None else ('pass' if ok else 'FAIL')}"
        for name, ok in results.items()
    ]
    _emit(payload, "\n".join(lines), args.json)
    return EXIT_NEGATIVE if failed else EXIT_OK


def _parse_spectrum(text: str) -> dict[Fraction, int]:
    out: dict[Fraction, int] = {}
    try:
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            lam, _, mult = item.partition(":")
            out[Fraction(lam)] = out.get(Fraction(lam), 0) + int(mult or "1")
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad spectrum {text!r}")
    return out


def _cmd_two_proj(args) -> int:
    spectrum = args.spectrum
    valid = realize.validate_multiplicity(args.p, args.q, args.dim, spectrum)
    payload = {
        "p": args.p,
        "q": args.q,
        "dim": args.dim,
        "spectrum": {str(k): v for k, v in spectrum.items()},
        "valid": valid,
    }
    if not valid:
        _emit(payload, "multiplicity function is not realizable", args.json)
        return EXIT_NEGATIVE
    pmat, qmat = realize.two_projection_sum(args.p, args.q, args.dim, spectrum)
    payload["P"] = [[float(x) for x in row] for row in pmat]
    payload["Q"] = [[float(x) for x in row] for row in qmat]
    eigs = sorted(np.linalg.eigvalsh(pmat + qmat))
    text = "realizable; spectrum of P+Q: " + ", ".join(f"{x:.6f}" for x in eigs)
    _emit(payload, text, args.json)
    return EXIT_OK


def _cmd_realize(args) -> int:
    from .errors import NotATFFSequence

    ranks = _canonical_ranks(args.ranks)
    try:
        pset = realize.realize_tff(
            ranks, args.dim, seed=args.seed, tol=args.tol,
            max_restarts=args.max_restarts,
        )
    except NotATFFSequence as exc:
        print(f"realize: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except ConvergenceFailure as exc:
        print(f"realize: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    report = realize.verify_tff(pset, tol=args.tol)
    payload = pset.to_json_dict()
    payload["sum_residual"] = report.sum_residual
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(pset.to_csv() + "\n")
    text = (
        f"realized {list(ranks)} in dimension {args.dim};"
        f" residual {report.sum_residual:.3e}"
    )
    _emit(payload, text, args.json, args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        pset = realize.ProjectionSet.from_json_dict(json.load(fh), tol=args.tol)
    alpha = args.alpha if args.alpha is not None else pset.alpha
    report = realize.verify_tff(pset, alpha=alpha, tol=args.tol)
    payload = {
        "dim": pset.dim,
        "ranks": list(pset.ranks),
        "alpha": str(Fraction(alpha)),
        "sum_residual": report.sum_residual,
        "block_orthonormality": list(report.block_orthonormality),
        "block_idempotence": list(report.block_idempotence),
        "block_ranks": list(report.block_ranks),
        "passed": report.passed,
    }
    text = (
        f"sum residual {report.sum_residual:.3e}; "
        f"ranks {list(report.block_ranks)}; "
        + ("pass" if report.passed else "FAIL")
    )
    _emit(payload, text, args.json)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tffcomb",
        description="Tight fusion frame sequences: decide, count, dualize,"
        " enumerate, and realize numerically.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("decide", _cmd_decide, help="decide tightness of a rank sequence")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ranks", type=_parse_ranks, required=True)

    p = add("count", _cmd_count, help="count certificate matrices")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ranks", type=_parse_ranks, required=True)

    p = add("certificate", _cmd_certificate, help="print one certificate")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ranks", type=_parse_ranks, required=True)
    p.add_argument("--out", help="write to file instead of stdout")

    p = add("tableau", _cmd_tableau, help="render the union skew tableau")
    p.add_argument("--dim", type=int)
    p.add_argument("--ranks", type=_parse_ranks)
    p.add_argument("--in", dest="infile", help="certificate JSON file")

    p = add("maximal", _cmd_maximal, help="dominance-maximal tight sequences")
    p.add_argument("--alpha", type=_parse_rational)
    p.add_argument("--dim", type=int)
    p.add_argument("--all", action="store_true",
                   help="all alpha <= 2 cells up to --max-dim")
    p.add_argument("--max-dim", type=int, default=9)
    p.add_argument("--out", help="write to file instead of stdout")

    p = add("enumerate", _cmd_enumerate, help="all tight sequences for (alpha, dim)")
    p.add_argument("--alpha", type=_parse_rational, required=True)
    p.add_argument("--dim", type=int, required=True)

    p = add("dual", _cmd_dual, help="sequence-level dualities")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ranks", type=_parse_ranks)
    p.add_argument("--alpha", type=_parse_rational)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--spatial", action="store_true")
    group.add_argument("--naimark", action="store_true")
    group.add_argument("--alpha-reduce", dest="alpha_reduce", action="store_true")
    group.add_argument("--strip", action="store_true")

    p = add("dual-config", _cmd_dual_config, help="certificate-level dualities")
    p.add_argument("--in", dest="infile", required=True,
                   help="certificate JSON file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--spatial", action="store_true")
    group.add_argument("--naimark", action="store_true")
    p.add_argument("--out", help="write to file instead of stdout")

    p = add("check-bounds", _cmd_check_bounds,
            help="run the necessary-condition filters")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ranks", type=_parse_ranks, required=True)
    p.add_argument("--alpha", type=_parse_rational,
                   help="defaults to sum(ranks)/dim")

    p = add("two-proj", _cmd_two_proj,
            help="build two projections with a prescribed sum spectrum")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--spectrum", type=_parse_spectrum, required=True,
                   help='eigenvalue:multiplicity list, e.g. "3/2:1,1/2:1"')

    p = add("realize", _cmd_realize, help="numerically realize a tight sequence")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ranks", type=_parse_ranks, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tol", type=float, default=realize.DEFAULT_TOL)
    p.add_argument("--max-restarts", type=int, default=realize.DEFAULT_RESTARTS)
    p.add_argument("--out", help="write ProjectionSet JSON to file")
    p.add_argument("--csv", help="also write the concatenated basis as CSV")

    p = add("verify", _cmd_verify, help="verify a ProjectionSet JSON file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--alpha", type=_parse_rational)
    p.add_argument("--tol", type=float, default=realize.DEFAULT_TOL)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except TFFCombError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
