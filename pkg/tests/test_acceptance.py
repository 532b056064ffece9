"""Acceptance gate: one summary line per criterion, printed at the end of the run."""
import time
from fractions import Fraction
from functools import reduce

import mpmath
import pytest
from hypothesis import given, strategies as st

from dzv import relations as R
from dzv.eisenstein import (double_shuffle_residuals, fitted_constant, harmonic_product_residuals, verify_hecke)
from dzv.formal import dim_D, is_consequence
from dzv.numerics import reconstruct_single_zeta, verify, zeta, zeta_double
from dzv.periods import (basis_gammaA_minus, basis_levelN, basis_W, cuspidal_subspace, dim_W_plus_formula,
                         span_W4plus)
from dzv.poly import DELTA, EPS, IDENTITY, S, T, U, X, Y, act
from dzv.rational import binom
from dzv.symbols import J, RelationVector, Z, Zhat

from conftest import P10, Q10, poly, record


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def ints(v):
    return [int(c) for c in v.terms.values()]


# 1. exact regeneration --------------------------------------------------------------------------

def test_c1_exact_regeneration():
    p = 145110 * (Fraction(-36, 691) * (X ** 10 - Y ** 10) + P10)
    v, dt = timed(lambda: R.gkz(p))
    # the theorem's orientation is -1 times the printed one
    odd = [-v.coeff(Z(r, 12 - r)) for r in (1, 3, 5, 7, 9)]
    even = [v.coeff(Z(r, 12 - r)) for r in (2, 4, 6, 8, 10)]
    ok = (odd == [22680, 13006, -29145, -35364, 22680] and even == [7560, -2114, Fraction(-42965, 3), -2114, 7560]
          and v.single == 1382)
    record(1, ok and dt < 1, f"gkz w=10 scaled Delta: odd {[str(c) for c in odd]} | even {[str(c) for c in even]} | single {v.single} "
                             f"(global sign -1 relative to the printed orientation; {dt:.2f}s)")
    assert ok

    ma_e, dt = timed(lambda: R.ma_even(P10).normalized())
    ok = ints(ma_e) == [14, 10, -21] and ma_e.single == Fraction(-3, 2)
    record(1, ok and dt < 1, f"ma_even: {ints(ma_e)} | {ma_e.single} ({dt:.2f}s)")
    assert ok

    ma_o, dt = timed(lambda: R.ma_odd(Q10).normalized())
    ok = ints(ma_o) == [12, 14, -5, -18] and ma_o.single == Fraction(-3, 2)
    record(1, ok and dt < 1, f"ma_odd: {ints(ma_o)} | {ma_o.single} ({dt:.2f}s)")
    assert ok

    (p16,) = cuspidal_subspace(14).basis
    cu, dt = timed(lambda: R.cuspidal_half(p16, "a").normalized())
    ok = ints(cu) == [1081080, 842358, -275295, -1400182, -1360395, -351252, 1081080]
    record(1, ok and dt < 1, f"cuspidal_half weight 16: {ints(cu)} ({dt:.2f}s)")
    assert ok


# 2. numeric verification --------------------------------------------------------------------------

def _rel(k, syms, coeffs):
    return RelationVector(k, dict(zip(syms, coeffs)), None)


NUMERIC_EXAMPLES = [
    ("zeta-hat weight 12", _rel(12, [Zhat(r, 12 - r) for r in range(3, 9)], [14, 42, 75, 95, 84, 42]),
     Fraction(1639, 2 ** 8 * 691)),
    ("zeta-hat weight 16", _rel(16, [Zhat(r, 16 - r) for r in range(3, 13)],
                                [66, 198, 375, 555, 686, 728, 675, 555, 396, 198]), Fraction(58703, 2 ** 12 * 3617)),
    ("Hirose (i) weight 6", _rel(6, [J(1, 3, 0), J(3, 1, 0)], [1, -1]), Fraction(11, 6)),
    ("Hirose (i) weight 10", _rel(10, [J(1, 7, 0), J(3, 5, 0), J(5, 3, 0), J(7, 1, 0)], [7, -2, 2, -7]),
     Fraction(29, 2)),
    ("Hirose (ii) weight 12", _rel(12, [Z(r, 12 - r) for r in range(3, 9)], [14, 42, 75, 95, 84, 42]),
     Fraction(6248, 691)),
    ("Hirose (ii) weight 16", _rel(16, [Z(r, 16 - r) for r in range(3, 13)],
                                   [66, 198, 375, 555, 686, 728, 675, 555, 396, 198]), Fraction(185656, 3617)),
    ("Hirose (iii) weight 12", _rel(12, [J(2, 0, 8), J(4, 0, 6), J(6, 0, 4)], [14, 75, 84]), Fraction(59246, 691)),
    ("Hirose (iv) weight 13", _rel(13, [J(1, 1, 9), J(3, 1, 7), J(5, 1, 5), J(7, 1, 3)], [48, 119, 10, -144]),
     Fraction(640)),
]


def test_c2_numeric_verification():
    start = time.perf_counter()
    g = _rel(12, [Z(3, 9), Z(5, 7), Z(7, 5)], [28, 150, 168])
    rep = verify(g.replace(single=Fraction(5197, 691)), eps=1e-25, dps=50)
    rel = abs(rep.residual.value) / rep.max_term
    c = reconstruct_single_zeta(g, eps=1e-40)
    ok = rel < 1e-25 and c == Fraction(5197, 691)
    record(2, ok, f"28 Z(3,9) + 150 Z(5,7) + 168 Z(7,5): residual/largest {mpmath.nstr(rel, 3)}, reconstructs {c}")
    assert ok
    failures = []
    for name, v, want in NUMERIC_EXAMPLES:
        got = reconstruct_single_zeta(v, eps=1e-40, max_denominator=10 ** 12)
        passed = got == want and verify(v.replace(single=want), eps=1e-25).passed
        record(2, passed, f"{name}: reconstructs {got} (expected {want})")
        if not passed:
            failures.append(name)
    dt = time.perf_counter() - start
    record(2, dt < 60, f"runtime {dt:.1f}s")
    assert not failures and dt < 60


# 3. dimensions ------------------------------------------------------------------------------------

def test_c3_dimensions():
    start = time.perf_counter()
    pairs = [(w, basis_W(w, 1).dimension, basis_W(w, -1).dimension) for w in range(2, 31, 2)]
    ok = all(p == (w + 2) // 4 - w // 6 and m == p - 1 for w, p, m in pairs)
    record(3, ok, "dim W_w^+/- = [(w+2)/4]-[w/6] (minus one) for even w = 2..30")
    assert ok and all(dim_W_plus_formula(w) == p for w, p, _ in pairs)

    ds = {k: dim_D(k) for k in range(3, 27)}
    ok = all(d == (k - 1) // 2 for k, d in ds.items())
    record(3, ok, "dim D_k = [(k-1)/2] for k = 3..26")
    assert ok

    ga = [basis_gammaA_minus(w).dimension for w in (4, 6, 8)]
    record(3, ga == [1, 0, 1], f"Gamma_A odd space dims at w = 4, 6, 8: {ga}")
    assert ga == [1, 0, 1]

    ranks = {w: span_W4plus(w).dimension for w in range(4, 15, 2)}
    ok = all(r == w // 2 - 1 for w, r in ranks.items())
    record(3, ok, f"S~ span rank w/2-1 for w = 4..14: {list(ranks.values())}")
    assert ok

    ok = all(basis_levelN(w, 1, sg).dimension == basis_W(w, sg).dimension for w in range(4, 15, 2) for sg in (1, -1))
    dt = time.perf_counter() - start
    record(3, ok and dt < 30, f"level-1 coset spaces match W_w^+/- for w = 4..14 ({dt:.1f}s total)")
    assert ok and dt < 30


# 4. C_k matrices --------------------------------------------------------------------------------

C_PRIME = {
    4: [[-1], [2], [0]],
    6: [[-1, -1, -1], [2, 2, 3], [0, 0, -3], [0, 0, 2], [0, 0, 0]],
    8: [[-1, -1, -1, -1, -1], [2, 2, 3, 4, 5], [0, 0, -3, -6, -10], [0, 0, 2, 4, 10], [0, 0, 0, 0, -5],
        [0, 0, 0, 0, 2], [0, 0, 0, 0, 0]],
}
C_SECOND = {
    4: [[0], [1], [-1]],
    6: [[0, 0], [0, 1], [0, -3], [1, 3], [-1, -1]],
    8: [[0, 0, 0], [0, 0, 1], [0, 0, -5], [0, 1, 10], [0, -3, -10], [1, 3, 5], [-1, -1, -1]],
}


@pytest.mark.parametrize("k", [4, 6, 8])
def test_c4_matrices(k):
    c1, c2 = R.ck_matrices(k)
    ok = c1.tolist() == C_PRIME[k] and c2.tolist() == C_SECOND[k]
    record(4, ok, f"C_{k}' and C_{k}'' equal the displayed matrices")
    assert ok


def test_c4_kernel_dimensions_reported():
    for k in (8, 12, 16):
        got, conj = len(R.ck_left_kernel(k)), (k - 2) // 4 + 1
        # conjectural: reported, never asserted
        record(4, True, f"left kernel of C_{k}: dim {got}, conjectured {conj} ({'agree' if got == conj else 'differ'})")


# 5. formal membership -----------------------------------------------------------------------------

def test_c5_formal_membership():
    bad = []
    for w in range(2, 19, 2):
        bad += [("gkz", w) for p in basis_W(w, 1).basis if not is_consequence(R.gkz(p))]
        bad += [("ma_even", w) for p in basis_W(w, 1).basis if not is_consequence(R.ma_even(p))]
        bad += [("ma_odd", w) for p in basis_W(w, -1).basis if not is_consequence(R.ma_odd(p))]
    record(5, not bad, f"gkz, ma_even, ma_odd are formal consequences for every basis element, k <= 20 {bad or ''}")
    assert not bad
    (p,) = cuspidal_subspace(10).basis
    holds = is_consequence(R.cuspidal_half(p, "a"))
    record(5, not holds, "weight-12 cuspidal zeta^(1/2) a-relation is not a formal consequence (negative control)")
    assert not holds


# 6. Eisenstein series -----------------------------------------------------------------------------

def test_c6_hecke_16():
    rep, dt = timed(lambda: verify_hecke(16, M=20, eps=1e-20))
    record(6, rep.passed, f"Hecke weight 16, c = {rep.constant}, n <= 20 at 1e-20 ({dt:.1f}s)")
    assert rep.passed


@pytest.mark.xfail(strict=True, reason="printed normalizer 680 does not match; the identity holds with 640")
def test_c6_hecke_12_as_printed():
    rep = verify_hecke(12, M=20, eps=1e-20)
    rows = list(rep.rows())
    record(6, rep.passed, f"Hecke weight 12 with the printed c = {rep.constant}: relative residual at n = 1 is "
                          f"{rows[1]['residual']}")
    assert rep.passed


def test_c6_hecke_12_fitted():
    c = fitted_constant(12)
    rep = verify_hecke(12, M=20, eps=1e-20, constant=int(c))
    record(6, rep.passed, f"Hecke weight 12 with fitted c = {c}: exact for 1 <= n <= 20, n = 0 numeric")
    assert c == 640 and rep.passed


def test_c6_qseries_identities():
    start = time.perf_counter()
    bad = []
    for k in range(3, 9):
        for key, coeffs in double_shuffle_residuals(k, M=10).items():
            if any(not c.is_zero() for c in coeffs[1:]):
                bad.append(("dsh", k, key))
            re, im = coeffs[0].evaluate(1e-25)
            if abs(re.value) + abs(im.value) > 1e-20:
                bad.append(("dsh n=0", k, key))
    for r, s in [(3, 3), (3, 4), (4, 4), (3, 5)]:
        coeffs = harmonic_product_residuals(r, s, M=10)
        re, im = coeffs[0].evaluate(1e-25)
        if any(not c.is_zero() for c in coeffs[1:]) or abs(re.value) + abs(im.value) > 1e-20:
            bad.append(("harmonic", r, s))
    dt = time.perf_counter() - start
    record(6, not bad, f"q-series double shuffle (k = 3..8) and harmonic product (r+s <= 8), n <= 10 ({dt:.1f}s)")
    assert not bad


# 7. conjectural reports ---------------------------------------------------------------------------

def test_c7_kt_reported():
    for k in (6, 8, 10):
        for i, p in enumerate(span_W4plus(k - 2).basis):
            v = R.kaneko_tsumura(p)
            lit = R.kaneko_tsumura(p, literal=True)
            rep, rep_lit = verify(v, eps=1e-20), verify(lit, eps=1e-20)
            record(7, v.status == "conjectural",
                   f"KT k={k} basis {i}: residual {mpmath.nstr(abs(rep.residual.value), 3)} "
                   f"({'pass' if rep.passed else 'fail'}); literal reading {mpmath.nstr(abs(rep_lit.residual.value), 3)}"
                   f" [status {v.status}]")
            assert v.status == "conjectural"


@pytest.mark.parametrize("k", [4, 6, 8])
def test_c7_ttilde_sum(k):
    v = R.ttilde_weighted_sum(k)
    rep = verify(v, eps=1e-25)
    record(7, rep.passed and v.status == "proven", f"T~ weighted sum k={k}: {rep}")
    assert rep.passed


# 8. properties ------------------------------------------------------------------------------------

def test_c8_double_shuffle_numeric():
    bad = []
    with mpmath.workdps(50):
        for r in range(2, 7):
            for s in range(2, 7):
                k = r + s
                prod = zeta(r, eps=1e-30).value * zeta(s, eps=1e-30).value
                harm = zeta_double(r, s, eps=1e-30).value + zeta_double(s, r, eps=1e-30).value + \
                    zeta(k, eps=1e-30).value
                shuf = sum((binom(p - 1, r - 1) + binom(p - 1, s - 1)) * zeta_double(k - p, p, eps=1e-30).value
                           for p in range(2, k))
                if abs(prod - harm) > 1e-28 or abs(prod - shuf) > 1e-28:
                    bad.append((r, s))
    record(8, not bad, "zeta(r)zeta(s) equals both the harmonic and shuffle expansions, 2 <= r,s <= 6")
    assert not bad


@given(st.integers(1, 40), st.integers(1, 40), st.integers(1, 6), st.integers(1, 6))
def _partial_fractions(m, n, r, s):
    lhs = Fraction(1, m ** r * n ** s)
    rhs = sum(Fraction(binom(p - 1, r - 1), n ** (r + s - p) * (m + n) ** p) +
              Fraction(binom(p - 1, s - 1), m ** (r + s - p) * (m + n) ** p) for p in range(1, r + s))
    assert lhs == rhs


def test_c8_partial_fractions_recorded():
    _partial_fractions()
    record(8, True, "partial fraction expansion exact in Fractions for random m, n, r, s")


elements = st.lists(st.sampled_from([S, T, U, EPS, DELTA, T.inverse()]), max_size=5).map(
    lambda gs: reduce(lambda a, b: a * b, gs, IDENTITY))
even_polys = st.integers(1, 4).flatmap(
    lambda h: st.lists(st.integers(-5, 5), min_size=2 * h + 1, max_size=2 * h + 1).map(lambda c: poly(2 * h, c)))


@given(even_polys, elements, elements)
def _group_action(p, g, h):
    assert act(act(p, g), h) == act(p, g * h)
    assert act(p, IDENTITY) == p


def test_c8_group_action():
    _group_action()
    ok = S * S == IDENTITY and U * U * U == IDENTITY and EPS * EPS == IDENTITY
    record(8, ok, "right action (P|g)|h = P|gh, S^2 = U^3 = 1 in PGL2")
    assert ok


def test_c8_bernoulli_realization():
    good = [k for k in range(4, 17, 2) if R.bernoulli_realization_holds(k)]
    printed = R.bernoulli_realization_holds(4, printed=True)
    record(8, len(good) == 7, "beta(r,s) with product weight 1/3 satisfies double shuffle for even k <= 16")
    record(8, printed, "beta(r,s) as printed (product weight 1) satisfies double shuffle at k = 4")
    assert len(good) == 7


def test_c8_error_honesty():
    bad = []
    with mpmath.workdps(60):
        for r, s in [(1, 4), (3, 3), (5, 7), (2, 9)]:
            lo, hi = zeta_double(r, s, eps=1e-20), zeta_double(r, s, eps=1e-40)
            if abs(lo.value - hi.value) > lo.error + hi.error or lo.error > 1e-20 or hi.error > 1e-40:
                bad.append((r, s))
    record(8, not bad, "error bounds at 1e-20 contain the 1e-40 values")
    assert not bad
