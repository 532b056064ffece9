from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from dzv.eisenstein import (HECKE_DATA, QCoeff, G_series, Ghalf_series, Greg_series, delta_qexp, divisor_sigma,
                            double_shuffle_residuals, e4_qexp, fitted_constant, g2_rational, gstar_rational,
                            harmonic_product_residuals, hecke_identity, lipschitz_check, s16_eigenform,
                            verify_hecke)
from dzv.symbols import Z

TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]


def as_complex(c: QCoeff, eps=1e-30):
    re, im = c.evaluate(eps)
    return mpmath.mpc(re.value, im.value)


def at_q(series, q):
    return mpmath.fsum(as_complex(c) * q ** n for n, c in enumerate(series.coeffs))


def test_delta_matches_ramanujan_tau():
    assert delta_qexp(10)[1:] == TAU
    with pytest.raises(ValueError):
        delta_qexp(0)


def test_s16_and_e4():
    assert s16_eigenform(4)[1:] == [1, 216, -3348, 13888]
    assert e4_qexp(3) == [1, 240, 2160, 6720]


@pytest.mark.parametrize("n", range(1, 16))
def test_divisor_counts_against_brute_force(n):
    import sympy
    assert divisor_sigma(3, n) == sympy.divisor_sigma(n, 3)
    assert gstar_rational(4, n) == sum(l * m ** 4 for l in range(1, n + 1) for m in range(1, n + 1) if l * m == n)
    brute = sum(n1 ** 2 * n2 ** 4
                for l1 in range(1, n + 1) for l2 in range(l1 + 1, n + 1)
                for n1 in range(1, n + 1) for n2 in range(1, n + 1) if l1 * n1 + l2 * n2 == n)
    assert g2_rational(3, 5, n) == brute


def test_G4_at_i_closed_form():
    with mpmath.workdps(30):
        q = mpmath.exp(-2 * mpmath.pi)
        val = at_q(G_series(4, 20), q)
        expected = mpmath.gamma(mpmath.mpf(1) / 4) ** 8 / (1920 * mpmath.pi ** 2)
        assert abs(val - expected) < mpmath.mpf(10) ** -25


def test_even_zeta_rewritten_through_bernoulli():
    c = QCoeff.of(1, [Z(2)])
    assert c.terms == {((), 2): Fraction(-1, 24)}  # times (2 pi i)^2 = -4 pi^2
    re, im = c.evaluate()
    with mpmath.workdps(40):
        assert abs(re.value - mpmath.pi ** 2 / 6) < 1e-25 and im.value == 0
    assert QCoeff.of(5, [Z(1)]).is_zero()


small = st.dictionaries(
    st.tuples(st.sampled_from([(), (Z(3),), (Z(5),), (Z(3), Z(5))]), st.integers(0, 4)),
    st.fractions(max_denominator=20).filter(bool), max_size=3,
).map(QCoeff)


@given(small, small, small)
def test_qcoeff_ring_laws(a, b, c):
    assert (a * b).terms == (b * a).terms
    assert (a * (b + c)).terms == (a * b + a * c).terms
    assert (a - a).is_zero()


@given(small, small)
def test_evaluation_is_multiplicative(a, b):
    with mpmath.workdps(40):
        lhs = as_complex(a * b)
        rhs = as_complex(a) * as_complex(b)
        assert abs(lhs - rhs) <= mpmath.mpf(10) ** -20 * max(1, abs(rhs))


def test_hecke_weight_16_holds_as_tabulated():
    rep = verify_hecke(16, M=8)
    assert rep.passed and all(rep.exact[1:])
    assert fitted_constant(16) == 322560


def test_hecke_weight_12_constant():
    assert HECKE_DATA[12][1] == 680
    assert not verify_hecke(12, M=6).passed
    assert fitted_constant(12) == 640
    rep = verify_hecke(12, M=8, constant=640)
    assert rep.passed and all(rep.exact[1:])
    lhs, rhs = hecke_identity(12, 3, constant=640)
    assert lhs[2].terms == rhs[2].terms == {((), 12): Fraction(-24, 640)}
    assert [r["n"] for r in rep.rows()] == list(range(9))


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7, 8])
def test_double_shuffle(k):
    res = double_shuffle_residuals(k, M=10)
    for (r, s), coeffs in res.items():
        assert all(c.is_zero() for c in coeffs[1:]), (r, s)
        re, im = coeffs[0].evaluate(1e-30)
        assert abs(re.value) < 1e-25 and abs(im.value) < 1e-25


@pytest.mark.parametrize("r,s", [(3, 3), (3, 4), (4, 4), (3, 5)])
def test_harmonic_product(r, s):
    coeffs = harmonic_product_residuals(r, s, M=10)
    assert all(c.is_zero() for c in coeffs[1:])
    re, im = coeffs[0].evaluate(1e-30)
    assert abs(re.value) < 1e-25 and abs(im.value) < 1e-25


def test_ghalf_is_greg_plus_half_single():
    diff = Ghalf_series(3, 5, 6) - Greg_series(3, 5, 6) - G_series(8, 6).scale(Fraction(1, 2))
    assert all(c.is_zero() for c in diff.coeffs)
    with pytest.raises(ValueError):
        Greg_series(1, 1, 3)


@pytest.mark.parametrize("k,z", [(2, 0.1 + 1.1j), (4, 0.3 + 0.8j), (7, -0.2 + 1.5j)])
def test_lipschitz(k, z):
    assert lipschitz_check(k, z) < 1e-30
