"""Exact linear algebra over Q.

Elimination is fraction free (Bareiss) on integer-scaled rows, with the first
nonzero entry of each column taken as pivot so results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

__all__ = ["RationalMatrix", "rref", "rank", "kernel", "left_kernel", "solve", "in_row_space"]


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match declared dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [tuple(Fraction(v) for v in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ((),) * self.cols)

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return RationalMatrix(self.rows, self.cols + other.cols,
                              tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, vec: Sequence) -> list[Fraction]:
        return [sum((a * Fraction(b) for a, b in zip(row, vec)), Fraction(0)) for row in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def _as_rows(m) -> list[list[Fraction]]:
    if isinstance(m, RationalMatrix):
        return [list(r) for r in m.entries]
    return [[Fraction(v) for v in r] for r in m]


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = reduce(lcm, (v.denominator for v in r), 1)
        out.append([int(v * den) for v in r])
    return out


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, ncols):
                num = p * row_i[j] - f * row_r[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("inexact Bareiss division")
                row_i[j] = q
        prev = p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref(m, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = _as_rows(m)
    if ncols is None:
        ncols = m.cols if isinstance(m, RationalMatrix) else (len(rows[0]) if rows else 0)
    if not rows:
        return [], []
    ech, pivots = _bareiss_echelon(_integer_rows(rows), ncols)
    red = [[Fraction(v) for v in r] for r in ech]
    for i, c in enumerate(pivots):
        p = red[i][c]
        red[i] = [v / p for v in red[i]]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [a - f * b for a, b in zip(red[k], red[i])]
    return red, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def kernel(m, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column in increasing order."""
    rows = _as_rows(m)
    if ncols is None:
        ncols = m.cols if isinstance(m, RationalMatrix) else (len(rows[0]) if rows else 0)
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def left_kernel(m: RationalMatrix) -> list[list[Fraction]]:
    """Vectors ``a`` with ``a M = 0``."""
    return kernel(m.transpose(), m.rows)


def solve(m, b: Sequence) -> list[Fraction] | None:
    """One solution of ``M x = b`` (free variables set to 0) or ``None``."""
    rows = _as_rows(m)
    ncols = m.cols if isinstance(m, RationalMatrix) else (len(rows[0]) if rows else 0)
    aug = [r + [Fraction(v)] for r, v in zip(rows, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def in_row_space(rows, v: Sequence) -> bool:
    rows = _as_rows(rows)
    if not rows:
        return not any(v)
    return rank(rows + [[Fraction(x) for x in v]]) == rank(rows)


def common_denominator(vals) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in vals), 1)


def content(vals) -> int:
    return reduce(gcd, (abs(int(v)) for v in vals), 0)
