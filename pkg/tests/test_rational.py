from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from dzv.rational import bernoulli, beta_single, binom, format_fraction, parse_fraction


def test_bernoulli_small_values():
    assert [bernoulli(n) for n in range(9)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0,
                                                Fraction(1, 42), 0, Fraction(-1, 30)]
    assert bernoulli(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("n", [2, 10, 24, 40, 61])
def test_bernoulli_against_mpmath(n):
    with mpmath.workdps(60):
        assert abs(mpmath.bernoulli(n) - mpmath.mpf(bernoulli(n).numerator) / bernoulli(n).denominator) < 1e-40


def test_bernoulli_rejects_negative():
    with pytest.raises(ValueError):
        bernoulli(-1)


@pytest.mark.parametrize("k", [2, 4, 6, 12])
def test_beta_is_even_zeta_over_2pii_power(k):
    # zeta(k) = beta(k) * (2 pi i)^k
    with mpmath.workdps(40):
        b = beta_single(k)
        v = mpmath.mpf(b.numerator) / b.denominator * (2 * mpmath.pi) ** k * (-1) ** (k // 2)
        assert abs(v - mpmath.zeta(k)) < 1e-30


def test_binom_outside_range_is_zero():
    assert binom(3, 5) == 0 and binom(-1, 0) == 0 and binom(4, -1) == 0
    assert binom(10, 3) == 120


@given(st.fractions())
def test_fraction_round_trip(x):
    s = format_fraction(x)
    assert "/" in s and parse_fraction(s) == x


def test_parse_fraction_integer_and_spaces():
    assert parse_fraction(" -7 ") == -7
    assert parse_fraction("3/6") == Fraction(1, 2)
