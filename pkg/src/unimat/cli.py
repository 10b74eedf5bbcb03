"""Command line interface.

Reports go to stdout as JSON (or CSV where offered); diagnostics go to
stderr. Integers carrying exact arithmetic content (entries, gcds,
determinants, counts, bounds, seeds) are encoded as decimal strings so no
consumer ever rounds them through floating point; shape and configuration
fields (k, n, shards, samples) stay plain JSON numbers. Exact rationals
are "numerator/denominator" strings, high-precision decimals are decimal
strings. Identical invocations produce byte-identical output.

Exit codes: 0 success, 2 usage or input errors, 3 completion refused
because the matrix is not unimodular, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any

from .density import PrimeSet, density_exact, density_limit, local_density
from .experiments import (
    DEFAULT_BUDGET,
    BoxSpec,
    BudgetError,
    EstimateReport,
    convergence_sweep,
    estimate_density,
    exhaustive_density,
)
from .matrix import IntMatrix, full_rank_minor_gcd
from .matrixfile import MatrixFileError, parse_matrix
from .normal_forms import NotUnimodularError, complete_to_gl, hnf, is_trivial_hnf, snf

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_UNIMODULAR = 3
EXIT_BUDGET = 4


def _mat_json(a: IntMatrix) -> list[list[str]]:
    return [[str(e) for e in a.row(i)] for i in range(a.rows)]


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _density_json(rep) -> dict[str, Any]:
    terms = {
        "zeta_series_cutoffs": {str(j): m for j, m in rep.terms["zeta_series_cutoffs"].items()},
        "product_cutoff": rep.terms["product_cutoff"],
    }
    return {"value": str(rep.value), "abs_error_bound": str(rep.abs_error_bound), "terms": terms}


def _estimate_json(rep: EstimateReport) -> dict[str, Any]:
    return {
        "k": rep.spec.k,
        "n": rep.spec.n,
        "bound": str(rep.spec.bound),
        "samples": rep.samples,
        "hits": str(rep.hits),
        "estimate": rep.estimate,
        "std_error": rep.std_error,
        "seed": str(rep.seed),
        "shards": rep.shards,
        "theory_value": rep.theory_value,
        "z_score": rep.z_score,
    }


_SWEEP_COLUMNS = ("B", "samples", "hits", "estimate", "std_error", "theory", "z")


def _estimate_csv_row(rep: EstimateReport) -> list[str]:
    return [
        str(rep.spec.bound),
        str(rep.samples),
        str(rep.hits),
        repr(rep.estimate),
        repr(rep.std_error),
        repr(rep.theory_value),
        "" if rep.z_score is None else repr(rep.z_score),
    ]


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_SWEEP_COLUMNS)
    w.writerows(rows)
    return buf.getvalue()


def _read_matrix(path: str) -> IntMatrix:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_matrix(text)


def _cmd_analyze(args: argparse.Namespace) -> tuple[str, int]:
    a = _read_matrix(args.file)
    payload: dict[str, Any] = {"rows": a.rows, "cols": a.cols}
    if args.mode == "unimodular":
        g = full_rank_minor_gcd(a)
        payload["minor_gcd"] = str(g)
        payload["unimodular"] = g == 1
    elif args.mode == "hnf":
        res = hnf(a)
        payload["H"] = _mat_json(res.H)
        payload["U"] = _mat_json(res.U)
        payload["det_U"] = str(res.detU)
        payload["trivial"] = is_trivial_hnf(res.H)
    elif args.mode == "snf":
        res = snf(a)
        payload["S"] = _mat_json(res.S)
        payload["invariant_factors"] = [str(d) for d in res.invariant_factors]
        payload["L"] = _mat_json(res.L)
        payload["R"] = _mat_json(res.R)
    else:
        m = complete_to_gl(a)
        payload["completion"] = _mat_json(m)
    return json.dumps(payload, indent=2) + "\n", EXIT_OK


def _cmd_density(args: argparse.Namespace) -> tuple[str, int]:
    rep = density_exact(args.k, args.n, args.tol)
    payload = {"k": args.k, "n": args.n, "tol": args.tol, **_density_json(rep)}
    return json.dumps(payload, indent=2) + "\n", EXIT_OK


def _cmd_limit(args: argparse.Namespace) -> tuple[str, int]:
    rep = density_limit(args.d, args.tol)
    payload = {"d": args.d, "tol": args.tol, **_density_json(rep)}
    return json.dumps(payload, indent=2) + "\n", EXIT_OK


def _cmd_local(args: argparse.Namespace) -> tuple[str, int]:
    s = PrimeSet.from_iterable(args.primes)
    q = local_density(s, args.k, args.n)
    payload = {
        "primes": [str(p) for p in s.primes],
        "k": args.k,
        "n": args.n,
        "density": _frac(q),
    }
    return json.dumps(payload, indent=2) + "\n", EXIT_OK


def _cmd_estimate(args: argparse.Namespace) -> tuple[str, int]:
    spec = BoxSpec(args.k, args.n, args.bound)
    rep = estimate_density(spec, args.samples, args.seed, args.shards)
    if args.format == "csv":
        return _csv_text([_estimate_csv_row(rep)]), EXIT_OK
    return json.dumps(_estimate_json(rep), indent=2) + "\n", EXIT_OK


def _cmd_exhaustive(args: argparse.Namespace) -> tuple[str, int]:
    spec = BoxSpec(args.k, args.n, args.bound)
    rep = exhaustive_density(spec, args.budget)
    payload = {
        "k": spec.k,
        "n": spec.n,
        "bound": str(spec.bound),
        "total": str(rep.total),
        "hits": str(rep.hits),
        "density": _frac(rep.density),
    }
    return json.dumps(payload, indent=2) + "\n", EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> tuple[str, int]:
    reps = convergence_sweep(args.k, args.n, tuple(args.bounds), args.samples, args.seed, args.shards)
    if args.format == "csv":
        return _csv_text([_estimate_csv_row(r) for r in reps]), EXIT_OK
    payload = {
        "k": args.k,
        "n": args.n,
        "samples": args.samples,
        "seed": str(args.seed),
        "shards": args.shards,
        "rows": [_estimate_json(r) for r in reps],
    }
    return json.dumps(payload, indent=2) + "\n", EXIT_OK


def _positive_int(text: str) -> int:
    v = int(text, 10)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text, 10)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be a nonnegative integer, got {text}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(t, 10) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unimat",
        description="Exact unimodularity analysis and density experiments "
        "for rectangular integer matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a matrix read from a file ('-' for stdin)")
    p.add_argument("file", help="matrix file: 'k n' header then k rows of n integers")
    p.add_argument(
        "--mode",
        required=True,
        choices=("unimodular", "hnf", "snf", "complete"),
        help="unimodular: gcd of full-rank minors; hnf: column-style Hermite "
        "form with transform; snf: Smith form with transforms; complete: "
        "extend the rows to a GL_n(Z) matrix",
    )
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("density", help="density of unimodular k x n integer matrices")
    p.add_argument("--k", required=True, type=_positive_int)
    p.add_argument("--n", required=True, type=_positive_int)
    p.add_argument("--tol", type=float, default=1e-12, help="absolute error tolerance")
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("limit", help="codimension-d limit of the densities as n grows")
    p.add_argument("--d", required=True, type=_positive_int, help="codimension n - k")
    p.add_argument("--tol", type=float, default=1e-12, help="absolute error tolerance")
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("local", help="exact density of full rank mod every prime in a set")
    p.add_argument("--primes", required=True, type=_int_list, help="comma-separated primes")
    p.add_argument("--k", required=True, type=_positive_int)
    p.add_argument("--n", required=True, type=_positive_int)
    p.set_defaults(func=_cmd_local)

    p = sub.add_parser("estimate", help="seeded Monte Carlo estimate over a box")
    p.add_argument("--k", required=True, type=_positive_int)
    p.add_argument("--n", required=True, type=_positive_int)
    p.add_argument("--bound", required=True, type=_positive_int, help="entries lie in [-B, B)")
    p.add_argument("--samples", required=True, type=_positive_int)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--shards", type=_positive_int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("exhaustive", help="exact density over a box by full enumeration")
    p.add_argument("--k", required=True, type=_positive_int)
    p.add_argument("--n", required=True, type=_positive_int)
    p.add_argument("--bound", required=True, type=_positive_int, help="entries lie in [-B, B)")
    p.add_argument(
        "--budget",
        type=_positive_int,
        default=DEFAULT_BUDGET,
        help="refuse boxes with more matrices than this",
    )
    p.set_defaults(func=_cmd_exhaustive)

    p = sub.add_parser("sweep", help="estimates across growing bounds, one derived seed each")
    p.add_argument("--k", required=True, type=_positive_int)
    p.add_argument("--n", required=True, type=_positive_int)
    p.add_argument("--bounds", required=True, type=_int_list, help="comma-separated bounds")
    p.add_argument("--samples", required=True, type=_positive_int)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--shards", type=_positive_int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        out, code = args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NotUnimodularError as exc:
        payload = {
            "error": "not_unimodular",
            "minor_gcd": str(exc.minor_gcd),
            "message": str(exc),
        }
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        return EXIT_NOT_UNIMODULAR
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
