"""Truncated q-expansions against divisor-sum and Lambert-series oracles."""

from fractions import Fraction

import pytest

from defexp.exactmath import divisor_sigma
from defexp.precreal import context
from defexp.qseries import (
    QSeries,
    a_series,
    coefficient_value,
    eisenstein_q,
    eval_mpoly_series,
    eval_series_numeric,
    jacobi_p0,
    jacobi_p0_product,
    qseries_from_json,
)
from defexp.symcoeff import (
    MPoly,
    c_n,
    from_eisenstein,
    reduce_to_A012,
    to_eisenstein,
)

T = 40


def lambert_series(front, power, trunc):
    """1 + front * sum_n n^power q^n / (1 - q^n), expanded directly."""
    coeffs = [Fraction(0)] * (trunc + 1)
    coeffs[0] = Fraction(1)
    for n in range(1, trunc + 1):
        for m in range(n, trunc + 1, n):
            coeffs[m] += front * n**power
    return QSeries(coeffs, trunc)


def test_constructor_pads_and_rejects_excess():
    s = QSeries((1, 2), 4)
    assert s.coeffs == (1, 2, 0, 0, 0)
    with pytest.raises(ValueError):
        QSeries((1, 2, 3), 1)


def test_coeff_bounds():
    s = QSeries((1, 2, 3))
    assert s.coeff(2) == 3
    with pytest.raises(IndexError):
        s.coeff(3)


def test_ring_ops_truncate_to_shorter_operand():
    a = QSeries((1, 1, 1, 1), 3)
    b = QSeries((1, -1), 5)
    assert (a + b).trunc == 3
    assert (a * b).trunc == 3
    assert (a * b).coeffs == (1, 0, 0, 0)


def test_mul_is_cauchy_product():
    a = QSeries((1, 2, 3), 4)
    b = QSeries((0, 1, -1), 4)
    assert (a * b).coeffs == (0, 1, 1, 1, -3)


def test_pow_matches_repeated_mul():
    s = QSeries((1, 1), 6)
    assert s**4 == s * s * s * s


def test_theta_multiplies_by_order():
    s = QSeries((5, 1, 2, 3), 3)
    assert s.theta().coeffs == (0, 1, 4, 9)


def test_json_round_trip():
    s = QSeries((Fraction(1, 3), -2, 0, 7), 5)
    assert qseries_from_json(s.to_json()) == s


@pytest.mark.parametrize(
    "name,front,power",
    [("E2", Fraction(-24), 1), ("E4", Fraction(240), 3), ("E6", Fraction(-504), 5)],
)
def test_eisenstein_against_lambert_expansion(name, front, power):
    assert eisenstein_q(name, T) == lambert_series(front, power, T)


@pytest.mark.parametrize("i", range(0, 4))
def test_a_series_coefficients_are_weighted_divisor_sums(i):
    s = a_series(i, T)
    assert s.coeff(0) == 0
    for m in range(1, T + 1):
        assert s.coeff(m) == m**i * divisor_sigma(m)


def test_theta_ladder_on_a_series():
    for i in range(0, 3):
        assert a_series(i, T).theta() == a_series(i + 1, T)


def test_basis_conversions_hold_as_series():
    for i in range(3):
        sym = MPoly.symbol("A", i)
        assert eval_mpoly_series(to_eisenstein(sym), T) == a_series(i, T)
    for name, slot in (("E2", 0), ("E4", 1), ("E6", 2)):
        sym = MPoly.symbol("E", slot)
        assert eval_mpoly_series(from_eisenstein(sym), T) == eisenstein_q(name, T)


def test_closure_of_fourth_symbol_holds_as_series():
    reduced = reduce_to_A012(MPoly.symbol("A", 3))
    assert eval_mpoly_series(reduced, T) == a_series(3, T)


def test_theta_sum_equals_product_form():
    assert jacobi_p0(T) == jacobi_p0_product(T)


def test_theta_sum_coefficients_are_signed_odd_numbers():
    s = jacobi_p0(25)
    expected = {0: 1, 1: -3, 3: 5, 6: -7, 10: 9, 15: -11, 21: 13}
    for m in range(26):
        assert s.coeff(m) == expected.get(m, 0)


def test_numeric_evaluation_matches_exact_horner():
    s = a_series(1, 30)
    q0 = Fraction(1, 3)
    exact = sum(c * q0**m for m, c in enumerate(s.coeffs))
    got = eval_series_numeric(s, q0, 128)
    ctx = context(128)
    err = abs(got.value.value - ctx.mpf(exact.numerator) / exact.denominator)
    assert err < ctx.mpf(2) ** (-118)
    assert got.tail_estimate.value > 0


def test_numeric_evaluation_rejects_bad_point():
    with pytest.raises(ValueError):
        eval_series_numeric(a_series(0, 10), Fraction(3, 2), 64)


def test_coefficient_value_converges_in_truncation():
    q0 = Fraction(1, 2)
    for n in (5, 6):
        a = coefficient_value(n, q0, 60, 160)
        b = coefficient_value(n, q0, 90, 160)
        assert abs((a - b) / b).value < 1e-8


def test_coefficient_value_of_first_orders():
    q0 = Fraction(1, 2)
    c1 = coefficient_value(1, q0, 60, 96)
    assert float(c1.value) == pytest.approx(2.744033888759488, rel=1e-12)
    c2 = coefficient_value(2, q0, 60, 96)
    assert float(c2.value) == pytest.approx(-8.838068070451195, rel=1e-12)


def test_eval_mpoly_series_is_multiplicative():
    p = reduce_to_A012(c_n(3))
    r = MPoly.symbol("A", 1) + MPoly.const("A", 2)
    lhs = eval_mpoly_series(p * r, 25)
    rhs = eval_mpoly_series(p, 25) * eval_mpoly_series(r, 25)
    assert lhs == rhs
