"""Shared fixtures: the q = 1/2 zero tables are expensive, build them once."""

from fractions import Fraction

import pytest

from defexp.validate import zero_table
from defexp.zeros import scan_zeros


@pytest.fixture(scope="session")
def q_half():
    return Fraction(1, 2)


@pytest.fixture(scope="session")
def zeros_q_half(q_half):
    """x_k for k = 10..30 at required_precision(k, q) bits."""
    return zero_table(q_half, 10, 30)


@pytest.fixture(scope="session")
def scanned_q_half(q_half):
    """The first six zeros from the grid-scan oracle (covers k <= 6)."""
    return scan_zeros(q_half, -300, 6)
