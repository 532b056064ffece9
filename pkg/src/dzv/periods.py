"""Exact bases of period-polynomial spaces.

Covers the level-one spaces W_w^+-, their cuspidal part, the level-two space
W_{w,Gamma_A}^-, the span W_{w,4}^+ of the rational-period polynomials S~_{w,j},
and coset-function spaces for Gamma_1(N).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Sequence

from .linalg import kernel
from .poly import (DELTA, IDENTITY, GroupElement, GroupRingElement, HomogeneousPoly, S, U, X, Y, act,
                   act_ring, normalize_integral, normalize_vector)
from .rational import bernoulli, beta_single, binom

__all__ = [
    "PeriodSpaceBasis", "CosetFunction", "DimensionMismatch",
    "basis_W", "basis_W_plus0", "C_coeff", "membership_check_via_C", "simplified_plus_criterion", "in_W", "lambda_coeff",
    "cuspidal_functional", "cuspidal_subspace", "basis_gammaA_minus", "stilde", "span_W4plus",
    "coset_classes", "basis_levelN", "levelN_conditions_hold",
    "dim_W_plus_formula", "dim_M", "dim_S",
]


class DimensionMismatch(AssertionError):
    """A computed dimension disagrees with a closed formula."""


@dataclass(frozen=True)
class PeriodSpaceBasis:
    degree: int
    sign: int
    level_tag: str
    basis: tuple
    level: int = 1

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class CosetFunction:
    """Map from A(N) to polynomials of a common degree."""
    level: int
    degree: int
    values: dict = field(hash=False)

    def __post_init__(self):
        classes = coset_classes(self.level)
        if set(self.values) != set(classes):
            raise ValueError("coset function must be defined on every class of A(N)")
        for (a, b) in classes:
            if self.values[(a, b)] != self.values[((-a) % self.level, (-b) % self.level)]:
                raise ValueError("coset function must satisfy F(-C) = F(C)")

    def __call__(self, a: int, b: int) -> HomogeneousPoly:
        return self.values[(a % self.level, b % self.level)]

    def flat(self) -> list[Fraction]:
        return [c for cls in coset_classes(self.level) for c in self.values[cls].coeffs]

    @classmethod
    def from_flat(cls, level: int, degree: int, vec: Sequence[Fraction]) -> "CosetFunction":
        classes = coset_classes(level)
        n = degree + 1
        return cls(level, degree, {c: HomogeneousPoly(degree, tuple(vec[i * n:(i + 1) * n]))
                                   for i, c in enumerate(classes)})


# dimension formulas --------------------------------------------------------------------

def dim_W_plus_formula(w: int) -> int:
    return (w + 2) // 4 - w // 6


def dim_M(k: int) -> int:
    """dim M_k(SL2(Z)) for k >= 2 even."""
    return k // 4 - (k - 2) // 6


def dim_S(k: int) -> int:
    return max(dim_M(k) - 1, 0)


# generic linear conditions ----------------------------------------------------------------

def _operator_matrix(w: int, e) -> list[list[Fraction]]:
    """Matrix of ``P -> P|e`` on coefficient vectors (row i = coefficient of X^i)."""
    cols = [act_ring(HomogeneousPoly.monomial(a, w - a), e).coeffs for a in range(w + 1)]
    return [[cols[j][i] for j in range(w + 1)] for i in range(w + 1)]


def _solve_space(w: int, ops) -> list[HomogeneousPoly]:
    rows: list[list[Fraction]] = []
    for e in ops:
        rows.extend(_operator_matrix(w, e))
    vecs = kernel(rows, w + 1) if rows else [[Fraction(int(i == j)) for i in range(w + 1)] for j in range(w + 1)]
    return [normalize_integral(HomogeneousPoly(w, tuple(v))) for v in vecs]


def _sign_op(sign: int) -> GroupRingElement:
    return GroupRingElement.of(DELTA) - GroupRingElement.of(sign)


ONE_PLUS_S = GroupRingElement.of(IDENTITY) + S
ONE_PLUS_U_U2 = GroupRingElement.of(IDENTITY) + U + U * U


def _check_even(w: int):
    if w < 0 or w % 2:
        raise ValueError(f"degree must be even and non-negative, got {w}")


@lru_cache(maxsize=None)
def basis_W(w: int, sign: int) -> PeriodSpaceBasis:
    """Basis of W_w^+ (sign=+1) or W_w^- (sign=-1)."""
    _check_even(w)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    basis = _solve_space(w, [ONE_PLUS_S, ONE_PLUS_U_U2, _sign_op(sign)])
    return PeriodSpaceBasis(w, sign, "level1", tuple(basis))


def basis_W_plus0(w: int) -> PeriodSpaceBasis:
    """Basis of W_w^{+,0} = {P in W_w^+ : P(X, 0) = 0}."""
    plus = basis_W(w, 1).basis
    rows = [[p.coeff(w) for p in plus]]
    vecs = kernel(rows, len(plus))
    out = [normalize_integral(sum((c * p for c, p in zip(v, plus)), HomogeneousPoly.zero(w))) for v in vecs]
    return PeriodSpaceBasis(w, 1, "level1-plus0", tuple(out))


def in_W(p: HomogeneousPoly, sign: int | None = None) -> bool:
    """Direct test of the defining equations P|(1+S) = P|(1+U+U^2) = 0 (and parity)."""
    if act_ring(p, ONE_PLUS_S) or act_ring(p, ONE_PLUS_U_U2):
        return False
    return sign is None or act(p, DELTA) == sign * p


# criterion through the constants C^p_{r,s} ----------------------------------------------

def C_coeff(p: int, r: int, s: int) -> int:
    """delta_{p,r} + (-1)^r binom(p-1, r-1) + (-1)^(p-s) binom(p-1, s-1)."""
    if min(p, r, s) < 1:
        raise ValueError("indices must be positive")
    return int(p == r) + (-1) ** r * binom(p - 1, r - 1) + (-1) ** ((p - s) % 2) * binom(p - 1, s - 1)


def membership_check_via_C(p: HomogeneousPoly, w: int | None = None) -> bool:
    """Decide P in W_w^+ for an even P through the odd-(r, s) C-constant equations."""
    w = p.degree if w is None else w
    if w != p.degree:
        raise ValueError("degree mismatch")
    if act(p, DELTA) != p:
        raise ValueError("polynomial is not delta-invariant")
    k = w + 2
    a = {h: p.coeff(h - 1) for h in range(1, k)}  # a_{h, k-h} = coefficient of X^(h-1) Y^(k-h-1)
    for r in range(1, k, 2):
        s = k - r
        if sum(a[h] * C_coeff(k - h, r, s) for h in range(1, k)) != 0:
            return False
    return True


def simplified_plus_criterion(p: HomogeneousPoly) -> bool:
    """P(X,Y) - P(Y-X, Y) + P(Y-X, X) == 0."""
    return (p - p.substitute(-1, 1, 0, 1) + p.substitute(-1, 1, 1, 0)).is_zero()


# cuspidal part -----------------------------------------------------------------------------

def lambda_coeff(r: int, s: int) -> Fraction:
    """Kohnen-Zagier constant lambda(r, s) for the extra cuspidal relation."""
    k = r + s
    if r < 1 or s < 1 or k < 3:
        raise ValueError("need r, s >= 1 and r + s >= 3")
    bk = beta_single(k)
    sg = (-1) ** s
    first = -bk / 12 * (1 - sg * binom(k - 1, s - 1) + sg * binom(k - 1, s))
    second = Fraction(sg, 3) * sum(binom(j - 1, s - 1) * beta_single(j) * beta_single(k - j) for j in range(2, k + 1))
    return first - second


def cuspidal_functional(p: HomogeneousPoly) -> Fraction:
    """sum over odd r, s of (r-1)!(s-1)! lambda(r,s) a_{r,s}, a read off P directly."""
    k = p.degree + 2
    return sum((factorial(r - 1) * factorial(k - r - 1) * lambda_coeff(r, k - r) * p.coeff(r - 1)
                for r in range(1, k, 2)), Fraction(0))


@lru_cache(maxsize=None)
def cuspidal_subspace(w: int) -> PeriodSpaceBasis:
    _check_even(w)
    if w < 2:
        raise ValueError("w must be >= 2")
    plus = basis_W(w, 1).basis
    row = [[cuspidal_functional(p) for p in plus]]
    vecs = kernel(row, len(plus))
    out = [normalize_integral(sum((c * p for c, p in zip(v, plus)), HomogeneousPoly.zero(w))) for v in vecs]
    return PeriodSpaceBasis(w, 1, "level1-cuspidal", tuple(out))


# level two: Gamma_A -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def basis_gammaA_minus(w: int) -> PeriodSpaceBasis:
    """{P in V_w^- : P|(1+U+U^2) = P|(S+SU+SU^2) = 0}."""
    _check_even(w)
    s_ops = GroupRingElement.of(S) + S * U + S * U * U
    basis = _solve_space(w, [ONE_PLUS_U_U2, s_ops, _sign_op(-1)])
    return PeriodSpaceBasis(w, -1, "gammaA", tuple(basis))


# level four: rational period polynomials -----------------------------------------------------

def _bernoulli_poly_block(w: int, n: int, x: HomogeneousPoly, y: HomogeneousPoly) -> HomogeneousPoly:
    out = HomogeneousPoly.zero(w)
    for i in range(0, n + 1, 2):
        out = out + binom(n, i) * bernoulli(i) * (x ** (n - i)) * (y ** (w - n + i))
    return out


def stilde(w: int, j: int) -> HomogeneousPoly:
    """The even polynomial S~_{w,j} spanning W_{w,4}^+."""
    _check_even(w)
    if w < 2 or not 1 <= j <= w // 2:
        raise ValueError(f"need w >= 2 even and 1 <= j <= w/2, got w={w}, j={j}")
    n = w + 2 - 2 * j
    first = Fraction(4 ** (w - 2 * j + 1), n) * _bernoulli_poly_block(w, n, Y / 4, X)
    second = -Fraction(1, 2 * j) * _bernoulli_poly_block(w, 2 * j, X, Y)
    kappa = Fraction((w + 2) * bernoulli(2 * j) * bernoulli(n)) / (2 * j * n * bernoulli(w + 2))
    den = 1 - Fraction(1, 2 ** (w + 2))
    corr = ((1 - Fraction(1, 4 ** j)) / den / 4) * X ** w - ((1 - Fraction(1, 2 ** n)) / den / 4 ** (2 * j)) * Y ** w
    return first + second - kappa * corr


@lru_cache(maxsize=None)
def span_W4plus(w: int) -> PeriodSpaceBasis:
    gens = [stilde(w, j) for j in range(1, w // 2 + 1)]
    rows = [list(g.coeffs) for g in gens]
    # row-reduce the generators to get an independent spanning set
    from .linalg import rref
    red, _ = rref(rows, w + 1)
    basis = tuple(normalize_integral(HomogeneousPoly(w, tuple(r))) for r in red)
    return PeriodSpaceBasis(w, 1, "level4span", basis, level=4)


# level N coset functions -------------------------------------------------------------------

@lru_cache(maxsize=None)
def coset_classes(N: int) -> tuple[tuple[int, int], ...]:
    """A(N) = {(a, b) mod N : gcd(a, b, N) = 1}, sorted."""
    if N < 1:
        raise ValueError("level must be >= 1")
    return tuple((a, b) for a in range(N) for b in range(N) if gcd(gcd(a, b), N) == 1)


def _row_times(ab, g: GroupElement, N: int) -> tuple[int, int]:
    a, b = ab
    return ((a * g.a + b * g.c) % N, (a * g.b + b * g.d) % N)


def _sl2_inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def _levelN_rows(w: int, N: int, sign: int | None) -> list[list[Fraction]]:
    classes = coset_classes(N)
    idx = {c: i for i, c in enumerate(classes)}
    n = w + 1
    size = n * len(classes)
    mats = {}

    def mat(g):
        key = (g.a, g.b, g.c, g.d)
        if key not in mats:
            mats[key] = _operator_matrix(w, g)
        return mats[key]

    def block_rows(terms):
        # terms: list of (class, group element or None for identity, coefficient)
        rows = [[Fraction(0)] * size for _ in range(n)]
        for cls, g, coef in terms:
            off = idx[cls] * n
            m = mat(g) if g is not None else None
            for i in range(n):
                if m is None:
                    rows[i][off + i] += coef
                else:
                    for j in range(n):
                        if m[i][j]:
                            rows[i][off + j] += coef * m[i][j]
        return rows

    out: list[list[Fraction]] = []
    S_inv = S.inverse()
    U_inv = U.inverse()
    U2_inv = (U * U).inverse()
    for c in classes:
        out += block_rows([(c, None, 1), (_row_times(c, S_inv, N), S, 1)])
        out += block_rows([(c, None, 1), (_row_times(c, U_inv, N), U, 1), (_row_times(c, U2_inv, N), U * U, 1)])
        neg = ((-c[0]) % N, (-c[1]) % N)
        if neg != c:
            out += block_rows([(c, None, 1), (neg, None, -1)])
        if sign is not None:
            flip = (c[0], (-c[1]) % N)
            out += block_rows([(flip, DELTA, 1), (c, None, -sign)])
    return out


@lru_cache(maxsize=None)
def basis_levelN(w: int, N: int, sign: int) -> PeriodSpaceBasis:
    """Basis of the coset-function space W_{w,N}^+- for Gamma_1(N)."""
    _check_even(w)
    classes = coset_classes(N)
    rows = _levelN_rows(w, N, sign)
    vecs = kernel(rows, (w + 1) * len(classes))
    basis = tuple(CosetFunction.from_flat(N, w, normalize_vector(v)) for v in vecs)
    return PeriodSpaceBasis(w, sign, f"levelN({N})", basis, level=N)


def levelN_conditions_hold(F: CosetFunction, sign: int | None = None) -> bool:
    rows = _levelN_rows(F.degree, F.level, sign)
    v = F.flat()
    return all(sum((a * b for a, b in zip(r, v)), Fraction(0)) == 0 for r in rows)


def check_dimension(name: str, computed: int, expected: int, strict: bool = True):
    """Raise (strict) or warn when a computed dimension disagrees with its formula."""
    if computed != expected:
        msg = f"{name}: computed dimension {computed}, formula gives {expected}"
        if strict:
            raise DimensionMismatch(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)


GAMMA_A_S_OPS = GroupRingElement.of(S) + S * U + S * U * U


def in_gammaA_minus(p: HomogeneousPoly) -> bool:
    return (not act_ring(p, ONE_PLUS_U_U2) and not act_ring(p, GAMMA_A_S_OPS)
            and act(p, DELTA) == -p)


def in_span(p: HomogeneousPoly, space: PeriodSpaceBasis) -> bool:
    """Membership of ``p`` in the span of a computed basis."""
    from .linalg import in_row_space
    if p.degree != space.degree:
        return False
    return in_row_space([list(b.coeffs) for b in space.basis], list(p.coeffs))


__all__ += ["in_gammaA_minus", "in_span"]
