"""Multi-precision reals carrying an absolute error bound."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

__all__ = ["BigReal", "rational_reconstruct", "InsufficientPrecision"]


class InsufficientPrecision(ArithmeticError):
    """Raised when a value is not known accurately enough to identify a rational."""


def _mpf(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


@dataclass(frozen=True)
class BigReal:
    """``value`` is within ``error`` of the true number."""
    value: mpf
    error: mpf

    def __post_init__(self):
        object.__setattr__(self, "value", _mpf(self.value))
        err = _mpf(self.error)
        if err < 0:
            raise ValueError("error bound must be non-negative")
        object.__setattr__(self, "error", err)

    @classmethod
    def exact(cls, x) -> "BigReal":
        return cls(_mpf(x), mpf(0))

    # mpf carries rounding at the current working precision; these bounds add one
    # ulp-sized term per operation on top of the propagated error.
    @staticmethod
    def _ulp(x: mpf) -> mpf:
        return abs(x) * mpf(2) ** (4 - mpmath.mp.prec)

    def __add__(self, other):
        other = other if isinstance(other, BigReal) else BigReal.exact(other)
        v = self.value + other.value
        return BigReal(v, self.error + other.error + self._ulp(v))

    __radd__ = __add__

    def __neg__(self):
        return BigReal(-self.value, self.error)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, BigReal) else BigReal.exact(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BigReal):
            other = BigReal.exact(other)
        v = self.value * other.value
        err = (abs(self.value) * other.error + abs(other.value) * self.error
               + self.error * other.error + self._ulp(v))
        return BigReal(v, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, BigReal):
            other = BigReal.exact(other)
        if abs(other.value) <= other.error:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / other.value
        lo = abs(other.value) - other.error
        err = (self.error + abs(v) * other.error) / lo + self._ulp(v)
        return BigReal(v, err)

    def __abs__(self):
        return BigReal(abs(self.value), self.error)

    def contains_zero(self) -> bool:
        return abs(self.value) <= self.error

    def __repr__(self):
        return f"BigReal({mpmath.nstr(self.value, 30)} +- {mpmath.nstr(self.error, 3)})"


def rational_reconstruct(x: BigReal, max_denominator: int) -> Fraction:
    """Return the unique ``p/q`` with ``q <= max_denominator`` within ``2 * x.error`` of ``x``.

    Two distinct fractions with denominators at most ``D`` are at least ``1/D^2``
    apart, so the answer is unique once ``4 * error < 1/D^2``; otherwise, or when
    no fraction fits, :class:`InsufficientPrecision` is raised.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    tol = 2 * x.error
    if 2 * tol * max_denominator ** 2 >= 1:
        raise InsufficientPrecision(
            f"error {mpmath.nstr(x.error, 3)} too large to separate denominators up to {max_denominator}")
    approx = _to_fraction(x.value)
    cand = approx.limit_denominator(max_denominator)
    if abs(_mpf(cand) - x.value) > tol:
        raise InsufficientPrecision(f"no fraction with denominator <= {max_denominator} within the error bound")
    return cand


def _to_fraction(v: mpf) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(v)._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man * 2 ** exp) if exp >= 0 else Fraction(man, 2 ** (-exp))
