"""Homogeneous bivariate polynomials over Q and the PGL2(Z) action on them.

A polynomial of degree ``w`` is stored densely: ``coeffs[a]`` is the coefficient
of ``X^a Y^(w-a)``.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping

from .rational import binom

__all__ = [
    "HomogeneousPoly", "GroupElement", "GroupRingElement",
    "X", "Y", "S", "T", "U", "EPS", "DELTA", "IDENTITY",
    "act", "act_ring", "normalize_integral", "parse_poly",
]


@dataclass(frozen=True)
class HomogeneousPoly:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(f"expected {self.degree + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    # construction -----------------------------------------------------------------
    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPoly":
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "HomogeneousPoly":
        """``coeff * X^a Y^b``."""
        c = [Fraction(0)] * (a + b + 1)
        c[a] = Fraction(coeff)
        return cls(a + b, tuple(c))

    @classmethod
    def from_dict(cls, degree: int, terms: Mapping[int, object]) -> "HomogeneousPoly":
        """Build from ``{x_exponent: coefficient}``."""
        c = [Fraction(0)] * (degree + 1)
        for a, v in terms.items():
            c[a] += Fraction(v)
        return cls(degree, tuple(c))

    # arithmetic -------------------------------------------------------------------
    def _check(self, other: "HomogeneousPoly"):
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if isinstance(other, HomogeneousPoly):
            self._check(other)
            return HomogeneousPoly(self.degree, tuple(p + q for p, q in zip(self.coeffs, other.coeffs)))
        if other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return HomogeneousPoly(self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, p in enumerate(self.coeffs):
                if p:
                    for j, q in enumerate(other.coeffs):
                        if q:
                            out[i + j] += p * q
            return HomogeneousPoly(self.degree + other.degree, tuple(out))
        if isinstance(other, (int, Fraction)):
            return HomogeneousPoly(self.degree, tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        return reduce(lambda acc, _: acc * self, range(n), HomogeneousPoly(0, (Fraction(1),)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    # accessors --------------------------------------------------------------------
    def coeff(self, a: int) -> Fraction:
        """Coefficient of ``X^a Y^(w-a)``."""
        if 0 <= a <= self.degree:
            return self.coeffs[a]
        return Fraction(0)

    def terms(self) -> dict[int, Fraction]:
        return {a: c for a, c in enumerate(self.coeffs) if c}

    # operations -------------------------------------------------------------------
    def substitute(self, a, b, c, d) -> "HomogeneousPoly":
        """``P(aX + bY, cX + dY)`` for arbitrary rational entries."""
        w = self.degree
        lin1 = HomogeneousPoly(1, (Fraction(b), Fraction(a)))
        lin2 = HomogeneousPoly(1, (Fraction(d), Fraction(c)))
        pow1 = [HomogeneousPoly(0, (Fraction(1),))]
        pow2 = [HomogeneousPoly(0, (Fraction(1),))]
        for _ in range(w):
            pow1.append(pow1[-1] * lin1)
            pow2.append(pow2[-1] * lin2)
        out = HomogeneousPoly.zero(w)
        for i, coef in enumerate(self.coeffs):
            if coef:
                out = out + coef * (pow1[i] * pow2[w - i])
        return out

    def diff_x(self) -> "HomogeneousPoly":
        if self.degree == 0:
            raise ValueError("cannot differentiate a constant into degree -1")
        return HomogeneousPoly(self.degree - 1, tuple(a * self.coeffs[a] for a in range(1, self.degree + 1)))

    def diff_y(self) -> "HomogeneousPoly":
        if self.degree == 0:
            raise ValueError("cannot differentiate a constant into degree -1")
        w = self.degree
        return HomogeneousPoly(w - 1, tuple((w - a) * self.coeffs[a] for a in range(w)))

    def mul_x(self) -> "HomogeneousPoly":
        return HomogeneousPoly(self.degree + 1, (Fraction(0),) + self.coeffs)

    def div_y(self) -> "HomogeneousPoly":
        """Exact division by Y; raises if Y does not divide the polynomial."""
        if self.coeffs[self.degree]:
            raise ValueError("polynomial is not divisible by Y")
        return HomogeneousPoly(self.degree - 1, self.coeffs[:-1])

    def sign_part(self, sign: int) -> "HomogeneousPoly":
        """``(P + sign * P|delta) / 2``: keep even (sign=+1) or odd (-1) powers of X."""
        return HomogeneousPoly(self.degree, tuple(
            c if (a % 2 == 0) == (sign > 0) else Fraction(0) for a, c in enumerate(self.coeffs)))

    def __call__(self, x, y):
        return sum(c * x ** a * y ** (self.degree - a) for a, c in enumerate(self.coeffs))

    def __str__(self):
        parts = []
        for a in range(self.degree, -1, -1):
            c = self.coeffs[a]
            if not c:
                continue
            b = self.degree - a
            mono = "*".join(s for s in (
                ("X" if a == 1 else f"X^{a}") if a else "",
                ("Y" if b == 1 else f"Y^{b}") if b else "") if s)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts) if parts else "0"


X = HomogeneousPoly(1, (Fraction(0), Fraction(1)))
Y = HomogeneousPoly(1, (Fraction(1), Fraction(0)))


def normalize_integral(p: HomogeneousPoly) -> HomogeneousPoly:
    """Scale to coprime integer coefficients with positive leading (highest X-power) coefficient."""
    if p.is_zero():
        return p
    vals = normalize_vector(list(reversed(p.coeffs)))
    return HomogeneousPoly(p.degree, tuple(reversed(vals)))


def normalize_vector(vals: Iterable[Fraction]) -> list[Fraction]:
    """Coprime integer rescaling with the first nonzero entry positive."""
    vals = [Fraction(v) for v in vals]
    nz = [v for v in vals if v]
    if not nz:
        return vals
    den = reduce(lambda acc, v: acc * v.denominator // gcd(acc, v.denominator), nz, 1)
    ints = [int(v * den) for v in vals]
    g = reduce(gcd, (abs(i) for i in ints if i))
    sgn = 1 if next(i for i in ints if i) > 0 else -1
    return [Fraction(sgn * i // g) for i in ints]


@dataclass(frozen=True)
class GroupElement:
    """Element of PGL2(Z), stored with its first nonzero entry positive."""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det) != 1:
            raise ValueError(f"determinant must be +-1, got {det}")
        first = next(v for v in (self.a, self.b, self.c, self.d) if v)
        if first < 0:
            for name in "abcd":
                object.__setattr__(self, name, -getattr(self, name))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        return GroupElement(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                            self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def inverse(self) -> "GroupElement":
        det = self.det
        return GroupElement(self.d * det, -self.b * det, -self.c * det, self.a * det)

    def __pow__(self, n: int) -> "GroupElement":
        base = self if n >= 0 else self.inverse()
        return reduce(lambda acc, _: acc * base, range(abs(n)), IDENTITY)

    def __add__(self, other):
        return GroupRingElement.of(self) + other

    __radd__ = __add__


IDENTITY = GroupElement(1, 0, 0, 1)
S = GroupElement(0, -1, 1, 0)
T = GroupElement(1, 1, 0, 1)
U = GroupElement(1, -1, 1, 0)
EPS = GroupElement(0, 1, 1, 0)
DELTA = GroupElement(-1, 0, 0, 1)


class GroupRingElement:
    """Finite Z-linear combination of PGL2(Z) elements."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[GroupElement, int] | None = None):
        self.terms = {g: c for g, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, g: "GroupElement | int") -> "GroupRingElement":
        if isinstance(g, int):
            return cls({IDENTITY: g})
        return cls({g: 1})

    def __add__(self, other):
        other = other if isinstance(other, GroupRingElement) else GroupRingElement.of(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-(other if isinstance(other, GroupRingElement) else GroupRingElement.of(other)))

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({g: c * other for g, c in self.terms.items()})
        other = other if isinstance(other, GroupRingElement) else GroupRingElement.of(other)
        out: dict[GroupElement, int] = {}
        for g, c in self.terms.items():
            for h, e in other.terms.items():
                gh = g * h
                out[gh] = out.get(gh, 0) + c * e
        return GroupRingElement(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return GroupRingElement.of(other) * self

    def __eq__(self, other):
        other = other if isinstance(other, GroupRingElement) else GroupRingElement.of(other)
        return self.terms == other.terms

    def __repr__(self):
        return f"GroupRingElement({self.terms!r})"


def act(p: HomogeneousPoly, g: GroupElement) -> HomogeneousPoly:
    """``(P|g)(X, Y) = P(aX + bY, cX + dY)``; a right action on V_w.

    Only well defined on PGL2(Z) for even degree, where the sign of ``g`` cancels.
    """
    return p.substitute(g.a, g.b, g.c, g.d)


def act_ring(p: HomogeneousPoly, e: GroupRingElement | GroupElement | int) -> HomogeneousPoly:
    if isinstance(e, int):
        return p * e
    if isinstance(e, GroupElement):
        return act(p, e)
    out = HomogeneousPoly.zero(p.degree)
    for g, c in e.terms.items():
        out = out + c * act(p, g)
    return out


def binomial_coefficients_read(p: HomogeneousPoly, top: int) -> dict[int, Fraction]:
    """Read ``c_r`` from ``sum_r binom(top, r-1) c_r X^(r-1) Y^(deg-r+1) = p``.

    Returns ``{r: c_r}`` for ``r = 1..deg+1``.  A zero binomial with nonzero
    coefficient is a caller error.
    """
    out = {}
    for a, coef in enumerate(p.coeffs):
        bn = binom(top, a)
        if bn == 0:
            if coef:
                raise ValueError(f"coefficient of X^{a} is nonzero but binom({top},{a}) = 0")
            out[a + 1] = Fraction(0)
        else:
            out[a + 1] = coef / bn
    return out


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b, ast.Mult: lambda a, b: a * b}


def parse_poly(text: str) -> HomogeneousPoly:
    """Parse a homogeneous polynomial in X and Y, e.g. ``"X^2*Y^2*(X^2-Y^2)^3"``.

    Only integer and rational constants, ``+ - * /``, and non-negative integer
    powers (``^`` or ``**``) are accepted.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id in ("X", "Y", "x", "y"):
            return X if node.id in ("X", "x") else Y
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow):
                if not isinstance(right, Fraction) or right.denominator != 1 or right < 0:
                    raise ValueError("exponents must be non-negative integers")
                return left ** int(right)
            if isinstance(node.op, ast.Div):
                if not isinstance(right, Fraction):
                    raise ValueError("division by a polynomial")
                return left / right
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise ValueError(f"unsupported operator in {text!r}")
            if isinstance(left, Fraction) and isinstance(right, Fraction):
                return op(left, right)
            if isinstance(left, Fraction) or isinstance(right, Fraction):
                if isinstance(node.op, ast.Mult):
                    return op(left, right)
                # a nonzero constant cannot be added to a polynomial of positive degree
                c, poly = (left, right) if isinstance(left, Fraction) else (right, left)
                c = HomogeneousPoly(0, (c,))
                left, right = (c, poly) if isinstance(left, Fraction) else (poly, c)
            return op(left, right)
        raise ValueError(f"unsupported expression in {text!r}")

    out = ev(tree.body)
    return out if isinstance(out, HomogeneousPoly) else HomogeneousPoly(0, (out,))
