"""Numeric verification of relation vectors and reconstruction of zeta(k) coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from ..bigreal import BigReal, InsufficientPrecision, rational_reconstruct
from ..symbols import RelationVector, Symbol
from . import values as V

__all__ = ["evaluate", "Report", "verify", "linear_value", "reconstruct_single_zeta",
           "UnevaluableSymbol"]


class UnevaluableSymbol(ValueError):
    pass


def evaluate(sym: Symbol, eps: float = V.DEFAULT_EPS, dps: int | None = None) -> BigReal:
    """Numeric value of one symbol."""
    kw = {"eps": eps, "dps": dps}
    f, idx, col = sym.family, sym.indices, sym.colors
    if f == "Z":
        if len(idx) == 1:
            return V.zeta(idx[0], **kw)
        if idx[1] == 1:
            raise UnevaluableSymbol(f"{sym} is divergent (formally zero)")
        return V.zeta_double(*idx, **kw)
    if f == "Zh":
        return V.zeta_half(*idx, **kw)
    if f == "Zhat":
        return V.zeta_hat(*idx, **kw)
    if f == "Tt":
        return V.t_tilde(*idx, **kw)
    if f == "T":
        return V.t_single(idx[0], **kw)
    if f == "J":
        return V.j_value(*idx, **kw)
    if f == "Zsh":
        return V.zeta_sh(idx[0], **kw)
    if f == "Zc":
        if any(c not in (0, 1) for c in col):
            raise UnevaluableSymbol(f"{sym}: numerics cover levels 1 and 2 only")
        if len(idx) == 1:
            return V.colored2_single(col[0], idx[0], **kw)
        return V.colored2(col[0], col[1], idx[0], idx[1], **kw)
    if f == "Pc":
        r, s = idx
        if any(c not in (0, 1) for c in col) or min(r, s) < 2:
            raise UnevaluableSymbol(f"{sym} has no numeric value here")
        return V.colored2_single(col[0], r, **kw) * V.colored2_single(col[1], s, **kw)
    raise UnevaluableSymbol(f"no evaluator for family {f!r}")


def linear_value(v: RelationVector, eps: float, dps: int | None = None) -> tuple[BigReal, mpf]:
    """(sum of coeff * value over the terms, largest |coeff * value|)."""
    d = dps or V.working_dps(eps)
    with mpmath.workdps(d):
        total = BigReal.exact(0)
        biggest = mpf(0)
        for sym, c in v.terms.items():
            x = evaluate(sym, eps=eps, dps=d) * c
            biggest = max(biggest, abs(x.value))
            total = total + x
        return total, biggest


@dataclass(frozen=True)
class Report:
    residual: BigReal
    max_term: mpf
    threshold: mpf
    passed: bool

    def __str__(self):
        state = "pass" if self.passed else "FAIL"
        return f"{state}: residual {mpmath.nstr(abs(self.residual.value), 5)} (threshold {mpmath.nstr(self.threshold, 3)})"


def verify(v: RelationVector, eps: float = V.DEFAULT_EPS, dps: int | None = None) -> Report:
    """Check ``sum coeff*value == single*zeta(k)`` numerically.

    A relation whose single-zeta coefficient is unknown cannot be verified; use
    :func:`reconstruct_single_zeta` first.
    """
    if v.single is None:
        raise ValueError("single-zeta coefficient is symbolic; reconstruct it first")
    d = dps or V.working_dps(eps)
    with mpmath.workdps(d):
        total, biggest = linear_value(v, eps, d)
        if v.single:
            zk = V.zeta(v.weight, eps=eps, dps=d) * v.single
            total = total - zk
            biggest = max(biggest, abs(zk.value))
        threshold = max(mpf(eps), 10 * total.error) * max(mpf(1), biggest)
        return Report(total, biggest, threshold, abs(total.value) <= threshold)


def reconstruct_single_zeta(v: RelationVector, eps: float = V.DEFAULT_EPS,
                            max_denominator: int = 10 ** 9, dps: int | None = None) -> Fraction:
    """Recover the rational c with sum coeff * value = c zeta(k).

    The values are evaluated to ``eps / sum|coeff|`` so that c itself is known
    to about ``eps``. Raises :class:`InsufficientPrecision` when no fraction is
    pinned down.
    """
    scale = max(Fraction(1), sum((abs(c) for c in v.terms.values()), Fraction(0)))
    inner = eps / float(scale)
    d = dps or V.working_dps(inner)
    with mpmath.workdps(d):
        total, biggest = linear_value(v, inner, d)
        x = total / V.zeta(v.weight, eps=inner, dps=d)
        # the error bound must also absorb cancellation between large terms
        x = BigReal(x.value, max(x.error, biggest * mpf(inner)))
        return rational_reconstruct(x, max_denominator)


__all__ += ["InsufficientPrecision"]
