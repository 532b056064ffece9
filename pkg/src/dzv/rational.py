"""Rational helpers: binomials, factorials and Bernoulli numbers over ``Fraction``."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

__all__ = ["binom", "factorial", "bernoulli", "beta_single", "to_fraction", "format_fraction", "parse_fraction"]


def binom(n: int, k: int) -> int:
    """Binomial coefficient that is zero outside ``0 <= k <= n`` (and for ``n < 0``)."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for m in range(1, n + 1):
        # sum_{j=0}^{m} binom(m+1, j) B_j = 0
        acc = sum(comb(m + 1, j) * table[j] for j in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli index must be non-negative")
    if n > 1 and n % 2:
        return Fraction(0)
    # grow the cache in blocks so repeated calls stay cheap
    size = max(32, 1 << (n.bit_length()))
    return _bernoulli_table(size)[n]


def beta_single(k: int) -> Fraction:
    """beta(k) = -B_k / (2 k!)."""
    return -bernoulli(k) / (2 * factorial(k))


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_fraction(x)
    return Fraction(x)


def format_fraction(x: Fraction) -> str:
    """Serialize as an exact ``p/q`` string (``p/1`` for integers)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(s))
