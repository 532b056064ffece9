"""Coefficient recipes turning period polynomials into relation vectors.

Every recipe reads coefficients off a transformed polynomial through a
binomial normalisation and assembles an exact :class:`RelationVector`.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .formal import colored_space, in_pev, single_zeta_coefficient
from .linalg import RationalMatrix, left_kernel, rank
from .periods import (CosetFunction, coset_classes, cuspidal_functional, in_gammaA_minus, in_span, in_W,
                      lambda_coeff, span_W4plus)
from .poly import DELTA, HomogeneousPoly, act, binomial_coefficients_read, normalize_vector
from .rational import beta_single, binom
from .symbols import J, RelationVector, Symbol, Tsingle, Tt, Z, Zc, Zh, Zhat, Zsh

__all__ = [
    "FAMILY_TAGS", "CONJECTURAL", "MembershipError", "SymmetryViolation",
    "gkz_coefficients", "gkz", "ma_odd_coefficients", "ma_odd", "ma_even_coefficients", "ma_even",
    "cuspidal_half", "hirose", "expand_j", "expand_relation_j", "bachmann", "kt_qplus", "kaneko_tsumura",
    "qplus_span_dim", "colored_coefficients", "colored", "colored_identity", "ck_matrices",
    "ck_left_kernel", "ttilde_weighted_sum", "restricted_sum", "euler_sum",
    "beta_double", "bernoulli_realization_holds",
]

FAMILY_TAGS = ("gkz", "ma_odd", "ma_even", "cuspidal_half_a", "cuspidal_half_b", "cuspidal_half_c",
               "hirose_i", "hirose_ii", "hirose_iii", "hirose_iv", "bachmann", "kaneko_tsumura",
               "colored", "ck_kernel", "ttilde_weighted_sum", "restricted_sum")
CONJECTURAL = frozenset({"kaneko_tsumura", "ck_kernel"})


class MembershipError(ValueError):
    """The input polynomial is not in the space the recipe requires."""


class SymmetryViolation(ArithmeticError):
    """Colored coefficients lack the parity symmetries the recipe relies on."""


def _require(cond: bool, msg: str):
    if not cond:
        raise MembershipError(msg)


def _provenance(p: HomogeneousPoly, tag: str) -> dict:
    return {"source_polynomial": list(p.coeffs), "space_tag": tag}


# GKZ and Ma ---------------------------------------------------------------------------------

def gkz_coefficients(p: HomogeneousPoly) -> dict[int, Fraction]:
    """``{r: a_{r,k-r}}`` from P(X+Y, X)."""
    return binomial_coefficients_read(p.substitute(1, 1, 1, 0), p.degree)


def gkz(p: HomogeneousPoly) -> RelationVector:
    """3 sum_odd a Z_{r,s} - sum_even a Z_{r,s} = (sum (-1)^r a) Z_k."""
    w = p.degree
    k = w + 2
    _require(w >= 2 and w % 2 == 0 and in_W(p, 1), "polynomial is not in W^+")
    a = gkz_coefficients(p)
    assert a[k - 1] == 0, "a_{k-1,1} must vanish"
    for r in range(2, k - 1, 2):
        assert a[r] == a[k - r], "a_{r,s} must be symmetric for even r, s"
    terms = {}
    for r in range(1, k - 1):
        terms[Z(r, k - r)] = 3 * a[r] if r % 2 else -a[r]
    single = sum(((-1) ** r * a[r] for r in range(1, k)), Fraction(0))
    return RelationVector(k, terms, single, family="gkz", meta=_provenance(p, "W+"))


def ma_odd_coefficients(p: HomogeneousPoly) -> dict[int, Fraction]:
    """``{r: b_{r,k-r}}`` from P(X+Y, Y) - (X/Y) P(X+Y, X)."""
    k = p.degree + 2
    shifted = p.substitute(1, 1, 1, 0)
    try:
        quotient = shifted.div_y()
    except ValueError:
        raise MembershipError("P(X+Y, X) is not divisible by Y") from None
    poly = p.substitute(1, 1, 0, 1) - quotient.mul_x()
    return binomial_coefficients_read(poly, k - 1)


def _resolve_single(v: RelationVector) -> RelationVector:
    c = single_zeta_coefficient(v.replace(single=None))
    if c is None:
        raise ArithmeticError(f"relation {v} does not hold modulo Q Z_k")
    return v.replace(single=c)


def ma_odd(p: HomogeneousPoly, resolve_single: bool = True) -> RelationVector:
    """sum_{r,s odd} b_{r,s} Z_{r,s+1} = c Z_{k+1} with c found in D_{k+1}."""
    w = p.degree
    k = w + 2
    _require(w >= 2 and w % 2 == 0 and in_W(p, -1), "polynomial is not in W^-")
    b = ma_odd_coefficients(p)
    assert b[1] == 0 and b[k - 1] == 0, "b_{1,k-1} and b_{k-1,1} must vanish"
    terms = {Z(r, k - r + 1): b[r] for r in range(1, k, 2)}
    v = RelationVector(k + 1, terms, None, family="ma_odd", meta=_provenance(p, "W-"))
    return _resolve_single(v) if resolve_single else v


def ma_even_coefficients(p: HomogeneousPoly) -> dict[int, Fraction]:
    """``{r: c_{r,k-1-r}}`` from d/dX P(X+Y,Y) - d/dY P(X+Y,X)."""
    k = p.degree + 2
    poly = p.substitute(1, 1, 0, 1).diff_x() - p.substitute(1, 1, 1, 0).diff_y()
    return binomial_coefficients_read(poly, k - 3)


def ma_even(p: HomogeneousPoly, resolve_single: bool = True) -> RelationVector:
    """sum_{r odd} c_{r,s} Z_{r,s} = c Z_{k-1} with c found in D_{k-1}."""
    w = p.degree
    k = w + 2
    _require(w >= 2 and w % 2 == 0 and in_W(p, 1), "polynomial is not in W^+")
    if w < 4:
        return RelationVector(k - 1, {}, Fraction(0), family="ma_even", meta=_provenance(p, "W+"))
    c = ma_even_coefficients(p)
    assert c[1] == 0 and c[k - 3] == 0, "c_{1,k-2} and c_{k-3,2} must vanish"
    terms = {Z(r, k - 1 - r): c[r] for r in range(1, k - 2, 2)}
    v = RelationVector(k - 1, terms, None, family="ma_even", meta=_provenance(p, "W+"))
    return _resolve_single(v) if resolve_single else v


# cuspidal relations for the 1/2-interpolated values ----------------------------------------

def cuspidal_half(p: HomogeneousPoly, kind: str) -> RelationVector:
    """The three vanishing sums of zeta^{1/2} values; ``kind`` is 'a', 'b' or 'c'."""
    w = p.degree
    k = w + 2
    if kind == "a":
        _require(in_W(p, 1) and cuspidal_functional(p) == 0, "polynomial is not a cuspidal element of W^+")
        a = gkz_coefficients(p)
        terms = {Zh(r, k - r): a[r] for r in range(1, k - 1, 2)}
        weight, tag = k, "W+cusp"
    elif kind == "b":
        _require(in_W(p, -1), "polynomial is not in W^-")
        b = ma_odd_coefficients(p)
        terms = {Zh(r, k - r + 1): b[r] for r in range(1, k, 2) if b[r]}
        weight, tag = k + 1, "W-"
    elif kind == "c":
        _require(in_W(p, 1), "polynomial is not in W^+")
        c = ma_even_coefficients(p) if w >= 4 else {}
        terms = {Zh(r, k - 1 - r): c[r] for r in range(1, k - 2, 2) if c.get(r)}
        weight, tag = k - 1, "W+"
    else:
        raise ValueError("kind must be 'a', 'b' or 'c'")
    return RelationVector(weight, terms, Fraction(0), value_kind="Zh", family=f"cuspidal_half_{kind}",
                          meta=_provenance(p, tag))


# Hirose: shuffle regularized values -----------------------------------------------------------

def hirose(p: HomogeneousPoly, variant: str) -> RelationVector:
    """Relations among J(a; b, c) modulo Q zeta(weight)."""
    w = p.degree
    if variant == "i":
        _require(in_gammaA_minus(p), "polynomial is not in W^-_{Gamma_A}")
        terms = {J(a, w - a, 0): factorial(a) * factorial(w - a) * p.coeff(a) for a in range(w + 1)}
        weight = w + 2
    elif variant == "ii":
        _require(in_W(p, 1), "polynomial is not in W^+")
        terms = {J(a, w - a, 0): factorial(a) * factorial(w - a) * p.coeff(a) for a in range(w + 1)}
        weight = w + 2
    elif variant in ("iii", "iv"):
        sign, mid, par = (1, 0, 0) if variant == "iii" else (-1, 1, 1)
        _require(in_W(p, sign), f"polynomial is not in W^{'+' if sign > 0 else '-'}")
        q = p.substitute(1, 1, 1, 0)
        terms = {J(a, mid, w - a): factorial(a) * factorial(w - a) * q.coeff(a)
                 for a in range(par, w + 1, 2)}
        weight = w + 2 + mid
    else:
        raise ValueError("variant must be one of i, ii, iii, iv")
    return RelationVector(weight, terms, None, value_kind="J", family=f"hirose_{variant}",
                          meta=_provenance(p, {"i": "W-GammaA", "ii": "W+", "iii": "W+", "iv": "W-"}[variant]))


def expand_j(sym: Symbol) -> dict[Symbol, Fraction]:
    """J(a;b,c) = (-1)^a sum_{i+j=a} binom(b+i,i) binom(c+j,j) zeta(b+i+1, c+j+1)."""
    a, b, c = sym.indices
    out: dict[Symbol, Fraction] = {}
    for i in range(a + 1):
        j = a - i
        coeff = Fraction((-1) ** a * binom(b + i, i) * binom(c + j, j))
        r, s = b + i + 1, c + j + 1
        key = (Zsh(r) if r > 1 else None) if s == 1 else Z(r, s)
        if key is None:
            raise ValueError("J(0;0,0) involves the divergent zeta(1,1)")
        out[key] = out.get(key, Fraction(0)) + coeff
    return out


def expand_relation_j(v: RelationVector) -> RelationVector:
    """Rewrite the J symbols of ``v`` through (shuffle regularized) double zeta values."""
    terms: dict[Symbol, Fraction] = {}
    for s, c in v.terms.items():
        parts = expand_j(s) if s.family == "J" else {s: Fraction(1)}
        for t, d in parts.items():
            terms[t] = terms.get(t, Fraction(0)) + c * d
    return v.replace(terms=terms, value_kind="Z")


# level two and level four ----------------------------------------------------------------

def bachmann(p: HomogeneousPoly) -> RelationVector:
    """sum_{s>=2} a_{r,s} zeta^(r,s) = c zeta(k), c symbolic."""
    k = p.degree + 2
    _require(in_W(p, 1), "polynomial is not in W^+")
    a = gkz_coefficients(p)
    assert a[k - 1] == 0
    terms = {Zhat(r, k - r): a[r] for r in range(1, k - 1)}
    return RelationVector(k, terms, None, value_kind="Zhat", family="bachmann", meta=_provenance(p, "W+"))


def kt_qplus(p: HomogeneousPoly) -> HomogeneousPoly:
    """Q^+ = (Q + Q|delta)/2 with Q(X, Y) = P(X+Y, -2X+2Y)."""
    q = p.substitute(1, 1, -2, 2)
    return (q + act(q, DELTA)) / 2


def kaneko_tsumura(p: HomogeneousPoly, literal: bool = False) -> RelationVector:
    """Conjectural sum d_{r,s} T~(r,s) = 0.

    Reading binom(k-2, r-1) d_{r,s} off Q^+(X+Y, X) yields a vector that fails
    numerically. Its mirror d'_{r,s} = -d_{s,r} is a left annihilator of C_k and
    agrees with the worked weight-6 example, so that is the default.
    ``literal=True`` returns the unmirrored reading.
    """
    w = p.degree
    k = w + 2
    _require(in_span(p, span_W4plus(w)), "polynomial is not in the span of the S~_{w,j}")
    d = binomial_coefficients_read(kt_qplus(p).substitute(1, 1, 1, 0), k - 2)
    if literal:
        terms = {Tt(r, k - r): d[r] for r in range(1, k)}
    else:
        terms = {Tt(r, k - r): -d[k - r] for r in range(1, k)}
    return RelationVector(k, terms, Fraction(0), level=4, value_kind="Tt", family="kaneko_tsumura",
                          status="conjectural", meta=_provenance(p, "W4+"))


def qplus_span_dim(k: int) -> int:
    return rank([list(kt_qplus(b).coeffs) for b in span_W4plus(k - 2).basis])


# colored ---------------------------------------------------------------------------------

def colored_coefficients(F: CosetFunction) -> dict[tuple[int, int], dict[int, Fraction]]:
    """``{(a, b): {r: e^{a,b}_{r,k-r}}}`` from F(C_{a,-a+b})(X-Y, X)."""
    N, w = F.level, F.degree
    return {(a, b): binomial_coefficients_read(F(a, b - a).substitute(1, -1, 1, 0), w)
            for (a, b) in coset_classes(N)}


def _check_colored_symmetries(e, N: int, k: int):
    # the swap symmetry of the even part also exchanges r and s
    def part(x, y, r, parity):
        return e[(x % N, y % N)][r] if r % 2 == parity else Fraction(0)

    def need(cond, what, ab, r):
        if not cond:
            raise SymmetryViolation(f"{what} fails at (a,b)={ab}, r={r}")

    for (a, b) in e:
        for r in range(1, k):
            s = k - r
            ev = part(a, b, r, 0)
            need(ev == (-1) ** r * part(-a, b, r, 0) == (-1) ** s * part(a, -b, r, 0), "even-part symmetry", (a, b), r)
            need(ev == part(b, a, s, 0), "even-part swap symmetry", (a, b), r)
            od = part(a, b, r, 1)
            need(od == (-1) ** (r + 1) * part(-a, b, r, 1) == (-1) ** (s + 1) * part(a, -b, r, 1),
                 "odd-part symmetry", (a, b), r)


def _colored_parts(F: CosetFunction):
    N, w = F.level, F.degree
    k = w + 2
    _require(w >= 2 and w % 2 == 0, "degree must be even and >= 2")
    e = colored_coefficients(F)
    _check_colored_symmetries(e, N, k)
    return N, k, e


def colored(F: CosetFunction) -> RelationVector:
    """3 sum e^{od} Z^{a,b}_{r,s}, an element of P^ev_{k,N}; its value is c zeta(k), c symbolic."""
    N, k, e = _colored_parts(F)
    terms = {Zc((r, k - r), ab): 3 * row[r] for ab, row in e.items() for r in range(1, k, 2)}
    return RelationVector(k, terms, None, level=N, value_kind="Zc", family="colored",
                          meta={"source_polynomial": [list(F(*c).coeffs) for c in coset_classes(N)],
                                "space_tag": f"W+_{{{k - 2},{N}}}"})


def colored_identity(F: CosetFunction) -> RelationVector:
    """3 sum e^od Z + sum e^ev Z + sum e Z^{a+b}_k, which vanishes in D_{k,N}."""
    N, k, e = _colored_parts(F)
    terms: dict[Symbol, Fraction] = {}
    for (a, b), row in e.items():
        for r in range(1, k):
            sym = Zc((r, k - r), (a, b))
            terms[sym] = terms.get(sym, Fraction(0)) + (3 * row[r] if r % 2 else row[r])
            single = Zc((k,), ((a + b) % N,))
            terms[single] = terms.get(single, Fraction(0)) + row[r]
    return RelationVector(k, terms, Fraction(0), level=N, value_kind="Zc", family="colored")


def colored_holds_formally(F: CosetFunction) -> bool:
    try:
        ident = colored_identity(F)
    except SymmetryViolation:
        return False
    sp = colored_space(ident.weight, ident.level)
    return sp.contains(sp.vector(ident.terms)) and in_pev(colored(F))


__all__.append("colored_holds_formally")


# C_k matrices and T~ sums --------------------------------------------------------------------

def ck_matrices(k: int) -> tuple[RationalMatrix, RationalMatrix]:
    """C_k' ((k-1) x (k-3)) and C_k'' ((k-1) x (k/2-1))."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    rows1, rows2 = [], []
    for k1 in range(1, k):
        k2 = k - k1
        rows1.append([int(l1 == k1) + (-1) ** k1 * binom(l1 - 1, k1 - 1) for l1 in range(2, k - 1)])
        rows2.append([(-1) ** ((l1 - k2) % 2) * binom(l1 - 1, k2 - 1) for l1 in range(2, k - 1, 2)])
    return RationalMatrix.from_rows(rows1, k - 3), RationalMatrix.from_rows(rows2, k // 2 - 1)


def ck_left_kernel(k: int) -> list[list[Fraction]]:
    c1, c2 = ck_matrices(k)
    return [normalize_vector(v) for v in left_kernel(c1.hstack(c2))]


def ttilde_weighted_sum(k: int) -> RelationVector:
    """sum_{j=0}^{k-2} 2^{k-j-2} T~(j+1, k-1-j) + T~(k-1, 1) - (k-1) T(k) = 0."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and >= 2")
    terms: dict[Symbol, Fraction] = {}
    for j in range(k - 1):
        sym = Tt(j + 1, k - 1 - j)
        terms[sym] = terms.get(sym, Fraction(0)) + 2 ** (k - j - 2)
    terms[Tt(k - 1, 1)] = terms.get(Tt(k - 1, 1), Fraction(0)) + 1
    terms[Tsingle(k)] = Fraction(-(k - 1))
    return RelationVector(k, terms, Fraction(0), level=4, value_kind="Tt", family="ttilde_weighted_sum")


def restricted_sum(k: int, parity: str = "odd") -> RelationVector:
    """sum_{r odd} Z_{r,k-r} = Z_k / 4 and sum_{r even} Z_{r,k-r} = 3 Z_k / 4."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    start, c = (1, Fraction(1, 4)) if parity == "odd" else (2, Fraction(3, 4))
    return RelationVector(k, {Z(r, k - r): 1 for r in range(start, k - 1, 2)}, c, family="restricted_sum")


def euler_sum(k: int) -> RelationVector:
    return RelationVector(k, {Z(r, k - r): 1 for r in range(1, k - 1)}, Fraction(1), family="restricted_sum")


# Bernoulli realization ---------------------------------------------------------------------

def beta_double(r: int, s: int, printed: bool = False) -> Fraction:
    """Bernoulli realization beta(r, s) of D_k.

    The printed normalisation beta(r)beta(s) - beta(k)/2 - lambda(r, s) does not
    solve the double shuffle equations; the product term needs weight 1/3.
    ``printed=True`` gives the uncorrected value for comparison.
    """
    k = r + s
    prod = beta_single(r) * beta_single(s)
    if not printed:
        prod /= 3
    return prod - beta_single(k) / 2 - lambda_coeff(r, s)


def bernoulli_realization_holds(k: int, printed: bool = False) -> bool:
    """beta(r,s) + beta(s,r) + beta(k) = sum (binom + binom) beta(h,p) for all r + s = k."""
    for r in range(1, k):
        s = k - r
        lhs = beta_double(r, s, printed) + beta_double(s, r, printed) + beta_single(k)
        rhs = sum(((binom(k - h - 1, r - 1) + binom(k - h - 1, s - 1)) * beta_double(h, k - h, printed)
                   for h in range(1, k)), Fraction(0))
        if lhs != rhs:
            return False
    return True
