"""Formal double zeta spaces D_k and their colored analogues D_{k,N}.

Relations are stored as rows over a fixed list of symbol columns. Membership
queries reuse one cached reduced echelon form per (k, N).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import RationalMatrix, rref, solve
from .periods import coset_classes
from .rational import binom
from .symbols import Pc, RelationVector, Symbol, Z, Zc

__all__ = ["LinearSystem", "dsh_columns", "dsh_matrix", "formal_space", "relation_to_row",
           "is_consequence", "single_zeta_coefficient", "reduce_to_odd_basis", "odd_basis",
           "dim_D", "colored_columns", "colored_dsh_matrix", "pev_generators",
           "colored_space", "in_pev", "NotABasis"]


class NotABasis(ArithmeticError):
    pass


@dataclass(frozen=True)
class LinearSystem:
    """Rows spanning a subspace of the span of ``columns``."""
    columns: tuple[Symbol, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    row_labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.columns)})
        red, piv = rref([list(r) for r in self.rows], len(self.columns)) if self.rows else ([], [])
        object.__setattr__(self, "_rref", red)
        object.__setattr__(self, "_pivots", piv)

    @property
    def matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows(self.rows, len(self.columns))

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def quotient_dimension(self) -> int:
        return len(self.columns) - self.rank

    def index(self, sym: Symbol) -> int:
        try:
            return self._index[sym]
        except KeyError:
            raise KeyError(f"symbol {sym} is not a column of this system") from None

    def vector(self, terms) -> list[Fraction]:
        v = [Fraction(0)] * len(self.columns)
        for s, c in terms.items():
            v[self.index(s)] += Fraction(c)
        return v

    def residue(self, v: Sequence[Fraction]) -> list[Fraction]:
        """Reduce ``v`` against the echelon rows (zero iff v lies in the row space)."""
        v = list(v)
        for row, c in zip(self._rref, self._pivots):
            f = v[c]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self.residue(v))

    def extended(self, extra_rows) -> "LinearSystem":
        return LinearSystem(self.columns, self.rows + tuple(tuple(r) for r in extra_rows))


# level 1 -----------------------------------------------------------------------------------

def dsh_columns(k: int) -> tuple[Symbol, ...]:
    return (Z(k),) + tuple(Z(h, k - h) for h in range(1, k - 1))


@lru_cache(maxsize=None)
def formal_space(k: int) -> LinearSystem:
    """Double shuffle relations of weight k for r >= s >= 1, symbols Z_{r,1} set to zero."""
    if k < 3:
        raise ValueError("weight must be >= 3")
    cols = dsh_columns(k)
    idx = {c: i for i, c in enumerate(cols)}

    def add(row, r, s, c):
        if s >= 2:
            row[idx[Z(r, s)]] += c

    rows, labels = [], []
    for s in range(1, k // 2 + 1):
        r = k - s
        row = [Fraction(0)] * len(cols)
        add(row, r, s, 1)
        add(row, s, r, 1)
        row[0] += 1
        for h in range(1, k):
            p = k - h
            add(row, h, p, -(binom(p - 1, r - 1) + binom(p - 1, s - 1)))
        rows.append(tuple(row))
        labels.append((r, s))
    return LinearSystem(cols, tuple(rows), tuple(labels))


def dsh_matrix(k: int) -> tuple[RationalMatrix, tuple[tuple[int, int], ...], tuple[Symbol, ...]]:
    """(matrix, row labels (r, s), column symbols)."""
    sp = formal_space(k)
    return sp.matrix, sp.row_labels, sp.columns


def dim_D(k: int) -> int:
    return formal_space(k).quotient_dimension


def relation_to_row(v: RelationVector, system: LinearSystem | None = None) -> list[Fraction]:
    """Vector of ``sum terms - single * Z_k``; the single part is dropped when symbolic."""
    system = system or formal_space(v.weight)
    terms = dict(_as_formal_terms(v))
    if v.single:
        terms[Z(v.weight)] = terms.get(Z(v.weight), Fraction(0)) - v.single
    return system.vector(terms)


def _as_formal_terms(v: RelationVector):
    """Map level-1 symbols to formal Z symbols; half-interpolated values are expanded."""
    for s, c in v.terms.items():
        if s.family == "Z":
            if len(s.indices) == 2 and s.indices[1] == 1:
                raise ValueError(f"{s}: no Z_(r,1) symbols exist in the formal space")
            yield s, c
        elif s.family == "Zh":
            r, t = s.indices
            if t == 1:
                raise ValueError(f"{s}: no Z_(r,1) symbols exist in the formal space")
            yield Z(r, t), c
            yield Z(r + t), c / 2
        else:
            raise ValueError(f"symbol family {s.family} has no formal counterpart")


def _combine(pairs):
    out: dict[Symbol, Fraction] = {}
    for s, c in pairs:
        out[s] = out.get(s, Fraction(0)) + c
    return out


def is_consequence(v: RelationVector, modulo_single: bool = False) -> bool:
    """Whether ``v`` holds in D_k (optionally modulo the line spanned by Z_k)."""
    if v.level != 1:
        return in_pev(v)
    if v.weight < 3:
        raise ValueError("weight must be >= 3")
    sp = formal_space(v.weight)
    if v.single is None and not modulo_single:
        raise ValueError("single-zeta coefficient is symbolic; use modulo_single=True")
    terms = _combine(_as_formal_terms(v))
    vec = sp.vector(terms)
    if not modulo_single and v.single:
        vec[0] -= v.single
    if modulo_single:
        vec[0] = Fraction(0)
        return _contains_mod_single(sp, vec)
    return sp.contains(vec)


def _contains_mod_single(sp: LinearSystem, vec) -> bool:
    e = [Fraction(0)] * len(sp.columns)
    e[0] = Fraction(1)
    return sp.extended([e]).contains(vec)


def single_zeta_coefficient(v: RelationVector) -> Fraction | None:
    """The unique c with ``sum terms = c Z_k`` in D_k, or None if no such c."""
    sp = formal_space(v.weight)
    vec = sp.vector(_combine(_as_formal_terms(v)))
    res = sp.residue(vec)
    e = [Fraction(0)] * len(sp.columns)
    e[0] = Fraction(1)
    re = sp.residue(e)
    if not any(re):
        # Z_k vanishes in D_k: any coefficient works only if vec does
        return Fraction(0) if not any(res) else None
    # res = c * re must hold exactly
    i = next(j for j, x in enumerate(re) if x)
    c = res[i] / re[i]
    if any(a - c * b for a, b in zip(res, re)):
        return None
    return c


def odd_basis(k: int) -> tuple[Symbol, ...]:
    return tuple(Z(k - s, s) for s in range(3, k, 2))


def reduce_to_odd_basis(v: RelationVector) -> dict[Symbol, Fraction]:
    """Coordinates of the class of ``sum terms - single Z_k`` in {Z_{k-s,s} : s odd}."""
    k = v.weight
    if k % 2 or k < 4:
        raise ValueError("weight must be even and >= 4")
    if v.single is None:
        raise ValueError("single-zeta coefficient must be known")
    sp = formal_space(k)
    basis = odd_basis(k)
    if sp.quotient_dimension != len(basis):
        raise NotABasis(f"dim D_{k} = {sp.quotient_dimension} but {len(basis)} basis symbols")
    brows = [sp.vector({b: 1}) for b in basis]
    full = LinearSystem(sp.columns, tuple(map(tuple, brows)) + sp.rows)
    if full.rank != len(sp.columns):
        raise NotABasis(f"odd symbols do not span D_{k}")
    vec = relation_to_row(v, sp)
    mat = RationalMatrix.from_rows(full.rows, len(sp.columns)).transpose()
    x = solve(mat, vec)
    if x is None:
        raise NotABasis("reduction failed")
    return {b: c for b, c in zip(basis, x[:len(basis)])}


# colored -----------------------------------------------------------------------------------

def colored_columns(k: int, N: int) -> tuple[Symbol, ...]:
    A = coset_classes(N)
    cols = [Zc((k,), (c,)) for c in range(N)]
    cols += [Zc((r, k - r), ab) for ab in A for r in range(1, k)]
    cols += [Pc(r, k - r, *ab) for ab in A for r in range(1, k)]
    return tuple(cols)


@lru_cache(maxsize=None)
def colored_space(k: int, N: int) -> LinearSystem:
    """Both families of regularized double shuffle relations with P symbols kept."""
    if k < 2 or N < 1:
        raise ValueError("need k >= 2 and N >= 1")
    cols = colored_columns(k, N)
    idx = {c: i for i, c in enumerate(cols)}
    A = coset_classes(N)
    rows, labels = [], []
    for (a, b) in A:
        for r in range(1, k):
            s = k - r
            P = idx[Pc(r, s, a, b)]
            row = [Fraction(0)] * len(cols)
            row[P] += 1
            row[idx[Zc((r, s), (a, b))]] -= 1
            row[idx[Zc((s, r), (b, a))]] -= 1
            row[idx[Zc((k,), ((a + b) % N,))]] -= 1
            rows.append(tuple(row))
            labels.append(("harmonic", r, s, a, b))
            row = [Fraction(0)] * len(cols)
            row[P] += 1
            u, v = (b - a) % N, (a - b) % N
            for h in range(1, k):
                p = k - h
                row[idx[Zc((h, p), (u, a))]] -= binom(p - 1, r - 1)
                row[idx[Zc((h, p), (v, b))]] -= binom(p - 1, s - 1)
            rows.append(tuple(row))
            labels.append(("shuffle", r, s, a, b))
    return LinearSystem(cols, tuple(rows), tuple(labels))


def colored_dsh_matrix(k: int, N: int) -> tuple[RationalMatrix, tuple, tuple[Symbol, ...]]:
    sp = colored_space(k, N)
    return sp.matrix, sp.row_labels, sp.columns


def pev_generators(k: int, N: int) -> list[list[Fraction]]:
    cols = colored_columns(k, N)
    idx = {c: i for i, c in enumerate(cols)}
    gens = []
    for c in range(N):
        row = [Fraction(0)] * len(cols)
        row[idx[Zc((k,), (c,))]] += 1
        row[idx[Zc((k,), ((-c) % N,))]] += (-1) ** k
        gens.append(row)
    for (a, b) in coset_classes(N):
        for r in range(1, k):
            s = k - r
            row = [Fraction(0)] * len(cols)
            for ea, eb, sg in ((a, b, 1), (-a, b, (-1) ** r), (a, -b, (-1) ** s), (-a, -b, (-1) ** k)):
                row[idx[Pc(r, s, ea % N, eb % N)]] += sg
            gens.append(row)
    return [g for g in gens if any(g)]


@lru_cache(maxsize=None)
def _pev_system(k: int, N: int) -> LinearSystem:
    return colored_space(k, N).extended(pev_generators(k, N))


def pev_subspace(k: int, N: int) -> LinearSystem:
    """Relations plus P^ev generators: a vector lies in P^ev mod relations iff it is in this span."""
    return _pev_system(k, N)


def in_pev(v: RelationVector) -> bool:
    """Whether the symbol part of ``v`` lies in P^ev_{k,N} modulo the double shuffle relations."""
    sp = _pev_system(v.weight, v.level)
    terms = {}
    for s, c in v.terms.items():
        if s.family not in ("Zc", "Pc"):
            raise ValueError(f"symbol {s} is not a colored symbol")
        terms[s] = c
    return sp.contains(sp.vector(terms))


__all__.append("pev_subspace")
