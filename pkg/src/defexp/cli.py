"""Command-line interface: every verb prints exactly one JSON document.

Verbs: coeff, reduce, eisenstein, series, zeros, residuals, ratio, fj,
selftest.  Structured output goes to stdout with stable key order and
fixed decimal rendering, so identical invocations are byte-identical
and CI can diff them; diagnostics go to stderr.  Exit codes: 0 success,
1 computation failure (JSON error object on stdout), 2 argument errors.
The environment variable DEFEXP_PRECISION (integer bits) overrides the
default working precision of the numeric verbs.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .jpoly import DecompositionError
from .precreal import PrecisionError
from .qseries import a_series, eisenstein_q, eval_mpoly_series, jacobi_p0
from .reference import run_selftest
from .symcoeff import c_n, reduce_to_A012, to_eisenstein
from .validate import fj_extract, ratio_check, residual_profile, zero_table
from .zeros import BracketError

PRECISION_ENV = "DEFEXP_PRECISION"


def _env_precision() -> int | None:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return None
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from exc
    if bits < 8:
        raise ValueError(f"{PRECISION_ENV} must be at least 8 bits")
    return bits


def _parse_q(text: str) -> Fraction:
    q = Fraction(text)
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    return q


def _emit(doc, csv_text: str | None = None, csv_path: str | None = None) -> None:
    if csv_text is not None and csv_path:
        with open(csv_path, "w", encoding="ascii") as fh:
            fh.write(csv_text)
        print(f"wrote {csv_path}", file=sys.stderr)
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_coeff(args) -> int:
    poly = c_n(args.n)
    if args.basis in ("a012", "eisenstein"):
        poly = reduce_to_A012(poly)
    if args.basis == "eisenstein":
        poly = to_eisenstein(poly)
    _emit(poly.to_json())
    return 0


_SERIES_RE = re.compile(r"^(A|C)(\d+)$")


def _cmd_series(args) -> int:
    expr = args.expr
    trunc = args.trunc
    if expr in ("E2", "E4", "E6"):
        series = eisenstein_q(expr, trunc)
    elif expr == "P0":
        series = jacobi_p0(trunc)
    else:
        m = _SERIES_RE.match(expr)
        if not m:
            raise ValueError(f"unknown series expression {expr!r}")
        kind, idx = m.group(1), int(m.group(2))
        if kind == "A":
            series = a_series(idx, trunc)
        else:
            if idx < 1:
                raise ValueError("C-series index starts at 1")
            series = eval_mpoly_series(c_n(idx), trunc)
    _emit(series.to_json())
    return 0


def _cmd_zeros(args) -> int:
    k_max = args.kmax if args.kmax is not None else args.k
    if k_max < args.k:
        raise ValueError("--kmax must be at least --k")
    table = zero_table(
        args.q, args.k, k_max, n_guess=args.guess_order, precision_bits=_env_precision()
    )
    _emit([table[k].to_json() for k in range(args.k, k_max + 1)])
    return 0


def _cmd_residuals(args) -> int:
    if args.kmax < args.kmin:
        raise ValueError("--kmax must be at least --kmin")
    table = zero_table(args.q, args.kmin, args.kmax, precision_bits=_env_precision())
    profile = residual_profile(args.q, args.n, range(args.kmin, args.kmax + 1), zeros=table)
    _emit(profile.to_json(), csv_text=profile.to_csv(), csv_path=args.csv)
    return 0


def _cmd_ratio(args) -> int:
    if args.kmax < args.kmin:
        raise ValueError("--kmax must be at least --kmin")
    table = zero_table(args.q, args.kmin, args.kmax + 1, precision_bits=_env_precision())
    rows = ratio_check(args.q, args.kmin, args.kmax, zeros=table)
    doc = {
        "q": str(Fraction(args.q)),
        "rows": [{"k": k, "deviation_k2": d.to_decimal()} for k, d in rows],
    }
    csv_text = "k,deviation_k2\n" + "".join(
        f"{k},{d.to_decimal()}\n" for k, d in rows
    )
    _emit(doc, csv_text=csv_text, csv_path=args.csv)
    return 0


def _cmd_fj(args) -> int:
    table = fj_extract(args.imax, args.jmax)
    _emit(table.to_json(), csv_text=table.to_csv(), csv_path=args.csv)
    return 0


def _cmd_selftest(args) -> int:
    results = run_selftest()
    ok = all(r["pass"] for r in results)
    for r in results:
        status = "pass" if r["pass"] else "FAIL"
        print(f"{status}: {r['name']}", file=sys.stderr)
    _emit({"fixtures": results, "ok": ok})
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defexp",
        description="Exact expansion coefficients and zeros of the deformed exponential",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("coeff", help="the coefficient polynomial C_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", choices=("raw", "a012", "eisenstein"), default="raw")
    p.set_defaults(func=_cmd_coeff)

    p = sub.add_parser("reduce", help="C_n reduced to the ring Q[A0, A1, A2]")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_coeff, basis="a012")

    p = sub.add_parser("eisenstein", help="C_n in the Eisenstein basis")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_coeff, basis="eisenstein")

    p = sub.add_parser("series", help="a named q-series, truncated")
    p.add_argument("--expr", required=True, help="A<i>, E2, E4, E6, P0 or C<n>")
    p.add_argument("--trunc", type=int, required=True)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("zeros", help="high-precision zeros x_k")
    p.add_argument("--q", type=_parse_q, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kmax", type=int)
    p.add_argument("--guess-order", type=int, default=2, dest="guess_order")
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("residuals", help="scaled residual profile r_n(k)")
    p.add_argument("--q", type=_parse_q, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kmin", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--csv", help="also write the profile as CSV to this path")
    p.set_defaults(func=_cmd_residuals)

    p = sub.add_parser("ratio", help="consecutive-zero ratio deviations")
    p.add_argument("--q", type=_parse_q, required=True)
    p.add_argument("--kmin", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--csv", help="also write the table as CSV to this path")
    p.set_defaults(func=_cmd_ratio)

    p = sub.add_parser("fj", help="coefficients of C_n by powers of q")
    p.add_argument("--imax", type=int, required=True)
    p.add_argument("--jmax", type=int, required=True)
    p.add_argument("--csv", help="also write the table as CSV to this path")
    p.set_defaults(func=_cmd_fj)

    p = sub.add_parser("selftest", help="replay the frozen regression fixtures")
    p.set_defaults(func=_cmd_selftest)

    return parser


_ERROR_CODES = (
    (BracketError, "bracket-failure"),
    (PrecisionError, "insufficient-precision"),
    (DecompositionError, "decomposition-error"),
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except tuple(t for t, _ in _ERROR_CODES) as exc:
        code = next(c for t, c in _ERROR_CODES if isinstance(exc, t))
        _emit({"code": code, "message": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
