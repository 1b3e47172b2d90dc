"""Numerical cross-checks of the expansion against computed zeros.

The scaled residual

    r_n(k) = (-x_k/(k q^(1-k)) - 1 - sum_{i=1}^n C_i(q) k^(-1-i)) * k^(n+2)

tends to C_{n+1}(q) as k grows; residual_profile tabulates it from
independently computed zeros.  ratio_check probes the consecutive-zero
ratio law q x_{k+1}/x_k = 1 + 1/k + o(k^-2), and fj_extract repackages
the reduced coefficients by powers of q to report on the positivity of
the truncated F_j(1/k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .precreal import PrecReal, context, to_mpf
from .qseries import coefficient_value, eval_mpoly_series
from .symcoeff import MPoly, c_n, reduce_to_A012
from .zeros import ZeroResult, find_zero, required_precision

__all__ = [
    "FjTable",
    "ResidualProfile",
    "expansion_terms",
    "fj_extract",
    "ratio_check",
    "residual_profile",
    "zero_table",
]

_SERIES_TRUNC = 60


def zero_table(
    q,
    k_min: int,
    k_max: int,
    n_guess: int = 2,
    precision_bits: int | None = None,
) -> dict[int, ZeroResult]:
    """find_zero over a k range, keyed by k (shared by the checks below)."""
    return {
        k: find_zero(k, q, n_guess=n_guess, precision_bits=precision_bits)
        for k in range(k_min, k_max + 1)
    }


@dataclass(frozen=True)
class ResidualProfile:
    """Rows (k, x_k, r_n(k)) for one truncation order n."""

    q: Fraction
    n: int
    rows: tuple[tuple[int, PrecReal, PrecReal], ...]

    def to_json(self) -> dict:
        return {
            "q": str(self.q),
            "n": self.n,
            "rows": [
                {"k": k, "x": x.to_decimal(), "r": r.to_decimal()}
                for k, x, r in self.rows
            ],
        }

    def to_csv(self) -> str:
        lines = ["k,x_k,r_n"]
        for k, x, r in self.rows:
            lines.append(f"{k},{x.to_decimal()},{r.to_decimal()}")
        return "\n".join(lines) + "\n"


def residual_profile(
    q,
    n: int,
    k_values,
    zeros: dict[int, ZeroResult] | None = None,
    series_trunc: int = _SERIES_TRUNC,
    n_guess: int = 2,
) -> ResidualProfile:
    """Scaled residuals r_n(k) over the given k values.

    Zeros are taken from `zeros` when provided (so several orders n can
    share one expensive table), otherwise computed here at
    required_precision(k, q) bits.
    """
    if n < 0:
        raise ValueError("truncation order must be nonnegative")
    qf = Fraction(q)
    ks = sorted(k_values)
    rows = []
    for k in ks:
        zr = zeros.get(k) if zeros else None
        if zr is None:
            zr = find_zero(k, qf, n_guess=n_guess)
        bits = zr.precision_bits
        ctx = context(bits)
        xv = to_mpf(ctx, zr.x)
        qv = to_mpf(ctx, qf)
        kk = ctx.mpf(k)
        t = -xv / (kk * qv ** (1 - k)) - 1
        for i in range(1, n + 1):
            ci = coefficient_value(i, qf, series_trunc, bits)
            t -= to_mpf(ctx, ci) * kk ** (-1 - i)
        r = t * kk ** (n + 2)
        rows.append((k, zr.x, PrecReal(r, bits)))
    return ResidualProfile(q=qf, n=n, rows=tuple(rows))


def expansion_terms(n: int) -> dict[int, MPoly]:
    """The order-n expansion polynomial as {power of 1/k: symbolic coefficient}.

    Power 0 carries the constant 1; power i+1 carries C_i.  Successive
    orders differ by exactly the single new term C_{n+1} k^(-n-2), the
    algebraic fact behind the residual telescoping.
    """
    terms = {0: MPoly.const("A", 1)}
    for i in range(1, n + 1):
        terms[i + 1] = c_n(i)
    return terms


def ratio_check(
    q,
    k_min: int,
    k_max: int,
    zeros: dict[int, ZeroResult] | None = None,
    n_guess: int = 2,
) -> list[tuple[int, PrecReal]]:
    """Rows (k, (q x_{k+1}/x_k - 1 - 1/k) * k^2) for k in [k_min, k_max].

    Needs x_{k_max+1}; the deviation times k^2 should stay bounded with
    no growth trend.
    """
    qf = Fraction(q)
    out = []
    table = dict(zeros) if zeros else {}
    for k in range(k_min, k_max + 2):
        if k not in table:
            table[k] = find_zero(k, qf, n_guess=n_guess)
    for k in range(k_min, k_max + 1):
        za, zb = table[k], table[k + 1]
        bits = min(za.precision_bits, zb.precision_bits)
        ctx = context(bits)
        xa = to_mpf(ctx, za.x)
        xb = to_mpf(ctx, zb.x)
        qv = to_mpf(ctx, qf)
        dev = qv * xb / xa - 1 - ctx.mpf(1) / k
        out.append((k, PrecReal(dev * ctx.mpf(k) ** 2, bits)))
    return out


@dataclass(frozen=True)
class FjTable:
    """Coefficients C_{ij} = [q^j] C_i plus a truncated-positivity report.

    F_j(1/k) = sum_i C_{ij} k^(-i-1); `negatives` lists every (j, k)
    with k <= k_report where the truncated sum dips below zero.
    """

    i_max: int
    j_max: int
    k_report: int
    c: tuple[tuple[Fraction, ...], ...]  # row i-1 holds [q^0..q^j_max] of C_i
    negatives: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "i_max": self.i_max,
            "j_max": self.j_max,
            "k_report": self.k_report,
            "c": [[str(v) for v in row] for row in self.c],
            "negatives": list(self.negatives),
        }

    def to_csv(self) -> str:
        lines = ["i\\j," + ",".join(str(j) for j in range(self.j_max + 1))]
        for i, row in enumerate(self.c, start=1):
            lines.append(f"{i}," + ",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"


def fj_extract(i_max: int, j_max: int, k_report: int = 20) -> FjTable:
    """Exact C_{ij} table from the reduced coefficients' q-series."""
    if i_max < 1 or j_max < 1:
        raise ValueError("table bounds must be positive")
    rows = []
    for i in range(1, i_max + 1):
        series = eval_mpoly_series(reduce_to_A012(c_n(i)), j_max)
        rows.append(tuple(series.coeff(j) for j in range(j_max + 1)))
    negatives = []
    for j in range(1, j_max + 1):
        for k in range(1, k_report + 1):
            val = sum(
                rows[i - 1][j] * Fraction(1, k ** (i + 1)) for i in range(1, i_max + 1)
            )
            if val < 0:
                negatives.append({"j": j, "k": k, "value": str(val)})
    return FjTable(
        i_max=i_max,
        j_max=j_max,
        k_report=k_report,
        c=tuple(rows),
        negatives=tuple(negatives),
    )
