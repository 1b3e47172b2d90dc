"""Exact truncated q-series and their numerical evaluation.

A QSeries is a power series in q known through a fixed truncation
order; coefficients are exact rationals.  The generators of interest
are the divisor-power series A_i = sum m^i sigma(m) q^m, the Eisenstein
series E2/E4/E6 (their Lambert series rewritten as divisor sums), and
Jacobi's cube P0 = prod (1-q^n)^3 = sum (-1)^(j-1) (2j-1) q^(j(j-1)/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import divisor_sigma
from .precreal import PrecReal, context, to_mpf

__all__ = [
    "QSeries",
    "SeriesValue",
    "a_series",
    "coefficient_value",
    "eisenstein_q",
    "eval_mpoly_series",
    "eval_series_numeric",
    "jacobi_p0",
    "jacobi_p0_product",
    "qseries_from_json",
]


class QSeries:
    """Truncated power series in q over Fraction (orders 0..trunc)."""

    __slots__ = ("trunc", "coeffs")

    def __init__(self, coeffs, trunc: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = len(cs) - 1
        if trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(cs) > trunc + 1:
            raise ValueError("more coefficients than the truncation order admits")
        cs.extend([Fraction(0)] * (trunc + 1 - len(cs)))
        self.trunc = trunc
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, trunc: int) -> "QSeries":
        return cls((), trunc)

    @classmethod
    def const(cls, value, trunc: int) -> "QSeries":
        return cls((value,), trunc)

    def coeff(self, m: int) -> Fraction:
        if not 0 <= m <= self.trunc:
            raise IndexError(f"order {m} outside truncation {self.trunc}")
        return self.coeffs[m]

    def truncate(self, new_trunc: int) -> "QSeries":
        if new_trunc > self.trunc:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[: new_trunc + 1], new_trunc)

    # -- ring operations, always at the weaker truncation ----------------

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries.const(other, self.trunc)
        return other if isinstance(other, QSeries) else None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.trunc, o.trunc)
        return QSeries([a + b for a, b in zip(self.coeffs, o.coeffs)][: n + 1], n)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c * other for c in self.coeffs], self.trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.trunc, other.trunc)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for k in range(n + 1 - i):
                    b = other.coeffs[k]
                    if b:
                        out[i + k] += a * b
        return QSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            raise ValueError("negative series power")
        result = QSeries.const(1, self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def theta(self) -> "QSeries":
        """q d/dq, term by term; truncation is preserved."""
        return QSeries([m * c for m, c in enumerate(self.coeffs)], self.trunc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def to_json(self) -> dict:
        return {"trunc": self.trunc, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.trunc >= 8 else ""
        return f"QSeries([{shown}{more}], trunc={self.trunc})"


def qseries_from_json(data) -> QSeries:
    return QSeries([Fraction(s) for s in data["coeffs"]], data["trunc"])


def a_series(i: int, trunc: int) -> QSeries:
    """A_i = sum_{m>=1} m^i sigma(m) q^m, truncated."""
    if i < 0:
        raise ValueError("A index must be nonnegative")
    return QSeries(
        [Fraction(0)] + [Fraction(m**i * divisor_sigma(m)) for m in range(1, trunc + 1)],
        trunc,
    )


_EISENSTEIN = {"E2": (-24, 1), "E4": (240, 3), "E6": (-504, 5)}


def eisenstein_q(which: str, trunc: int) -> QSeries:
    """E2, E4 or E6 with the Lambert series rewritten as divisor sums.

    E.g. E4 = 1 + 240 sum n^3 q^n/(1-q^n) = 1 + 240 sum_m sigma_3(m) q^m.
    """
    if which not in _EISENSTEIN:
        raise ValueError(f"unknown Eisenstein series {which!r}")
    scale, power = _EISENSTEIN[which]
    coeffs = [Fraction(1)] + [
        Fraction(scale * divisor_sigma(m, power)) for m in range(1, trunc + 1)
    ]
    return QSeries(coeffs, trunc)


def jacobi_p0(trunc: int) -> QSeries:
    """P0 as the theta sum: sum_{j>=1} (-1)^(j-1) (2j-1) q^(j(j-1)/2)."""
    coeffs = [Fraction(0)] * (trunc + 1)
    j = 1
    while j * (j - 1) // 2 <= trunc:
        coeffs[j * (j - 1) // 2] += (-1) ** (j - 1) * (2 * j - 1)
        j += 1
    return QSeries(coeffs, trunc)


def jacobi_p0_product(trunc: int) -> QSeries:
    """P0 as the product prod_{n>=1} (1-q^n)^3, truncated.

    Independent of the theta-sum route; factors with n > trunc cannot
    touch the kept orders.
    """
    coeffs = [Fraction(0)] * (trunc + 1)
    coeffs[0] = Fraction(1)
    for n in range(1, trunc + 1):
        for _ in range(3):
            # multiply in place by (1 - q^n); descending order keeps the
            # old values on the right-hand side
            for t in range(trunc, n - 1, -1):
                coeffs[t] -= coeffs[t - n]
    return QSeries(coeffs, trunc)


def eval_mpoly_series(p, trunc: int) -> QSeries:
    """Evaluate an A- or E-symbol polynomial into its exact q-series."""
    family = p.family
    if family == "A":
        def base(i: int) -> QSeries:
            return a_series(i, trunc)
    elif family == "E":
        def base(i: int) -> QSeries:
            return eisenstein_q(("E2", "E4", "E6")[i], trunc)
    else:
        raise ValueError(f"cannot evaluate symbol family {family!r} as q-series")
    base_cache: dict[int, QSeries] = {}
    pow_cache: dict[tuple[int, int], QSeries] = {}
    acc = QSeries.zero(trunc)
    for exps, c in p.canonical_terms():
        term = QSeries.const(c, trunc)
        for i, e in enumerate(exps):
            if not e:
                continue
            key = (i, e)
            pw = pow_cache.get(key)
            if pw is None:
                b = base_cache.get(i)
                if b is None:
                    b = base_cache[i] = base(i)
                pw = pow_cache[key] = b**e
            term = term * pw
        acc = acc + term
    return acc


@dataclass(frozen=True)
class SeriesValue:
    """Numeric value of a truncated series plus a crude tail estimate."""

    value: PrecReal
    tail_estimate: PrecReal


def eval_series_numeric(s: QSeries, q0, precision_bits: int) -> SeriesValue:
    """Horner evaluation at 0 < q0 < 1 with the given working precision.

    The tail estimate |c_N| q0^(N+1)/(1-q0) is diagnostic only: it
    treats the dropped coefficients as if frozen at the last kept one.
    """
    ctx = context(precision_bits)
    qv = to_mpf(ctx, Fraction(q0) if isinstance(q0, (int, str)) else q0)
    if not 0 < qv < 1:
        raise ValueError("series evaluation needs 0 < q0 < 1")
    acc = ctx.mpf(0)
    for c in reversed(s.coeffs):
        acc = acc * qv + to_mpf(ctx, c)
    tail = abs(to_mpf(ctx, s.coeffs[s.trunc])) * qv ** (s.trunc + 1) / (1 - qv)
    return SeriesValue(PrecReal(acc, precision_bits), PrecReal(tail, precision_bits))


@lru_cache(maxsize=None)
def coefficient_value(i: int, q: Fraction, trunc: int, precision_bits: int) -> PrecReal:
    """Numeric C_i(q) from the reduced coefficient's truncated q-series."""
    from .symcoeff import c_n, reduce_to_A012

    series = eval_mpoly_series(reduce_to_A012(c_n(i)), trunc)
    return eval_series_numeric(series, Fraction(q), precision_bits).value
