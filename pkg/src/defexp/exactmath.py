"""Exact scalar arithmetic: Bernoulli numbers, binomials, divisor sums.

All quantities are exact rationals (`fractions.Fraction`).  Rationals
serialize as the string ``"p/q"`` in lowest terms with the sign on the
numerator, which is exactly what ``str(Fraction)`` produces and
``Fraction(str)`` parses back.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, isqrt

__all__ = [
    "Rational",
    "bernoulli",
    "divisor_sigma",
    "gen_binomial",
    "parse_rational",
    "power_sum_poly",
    "rational_str",
]

Rational = Fraction


def rational_str(r: Fraction) -> str:
    """Canonical string form of a rational, e.g. ``-691/2730`` or ``3``."""
    return str(Fraction(r))


def parse_rational(s: str) -> Fraction:
    """Inverse of rational_str; also accepts plain integers and decimals."""
    return Fraction(s)


_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """n-th Bernoulli number, convention B_1 = -1/2.

    Computed from the defining recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0
    and cached; the cache only grows, so repeated calls behave as if each
    value were recomputed.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    while len(_bernoulli_cache) <= n:
        m = len(_bernoulli_cache)
        acc = sum(comb(m + 1, k) * _bernoulli_cache[k] for k in range(m))
        _bernoulli_cache.append(Fraction(-acc, m + 1))
    return _bernoulli_cache[n]


def gen_binomial(alpha, k: int):
    """Generalized binomial coefficient alpha*(alpha-1)*...*(alpha-k+1)/k!.

    alpha may be an exact scalar (int or Fraction) or any ring element
    supporting subtraction of ints and multiplication by Fractions (e.g. a
    polynomial); the result has the matching kind.  gen_binomial(alpha, 0)
    is 1 for every alpha.
    """
    if k < 0:
        raise ValueError("lower index must be nonnegative")
    result = None
    for i in range(k):
        factor = alpha - i
        result = factor if result is None else result * factor
    if result is None:
        return Fraction(1)
    return result * Fraction(1, factorial(k))


def divisor_sigma(m: int, power: int = 1) -> int:
    """Sum of d**power over the positive divisors d of m, by trial division."""
    if m < 1:
        raise ValueError("divisor sum needs a positive integer")
    total = 0
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            total += d**power
            e = m // d
            if e != d:
                total += e**power
    return total


def power_sum_poly(m: int):
    """Sum 1^m + 2^m + ... + (j-1)^m as an exact polynomial in j.

    Uses the Bernoulli closed form for the sum up to j and subtracts the
    top term j^m; degree m+1.  For m >= 2 the coefficient of j is
    (-1)^m B_m (at m = 1 the subtracted top term lands on j as well).
    """
    if m < 1:
        raise ValueError("power sum exponent must be >= 1")
    from .jpoly import JPoly  # deferred: JPoly layer builds on this module

    coeffs = [Fraction(0)] * (m + 2)
    for i in range(m + 1):
        coeffs[m + 1 - i] = Fraction((-1) ** i * comb(m + 1, i), m + 1) * bernoulli(i)
    coeffs[m] -= 1
    return JPoly(coeffs)
