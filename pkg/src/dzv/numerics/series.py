"""Periodic depth-two Dirichlet series with asymptotic tails.

Every value family reduces to

    sum_{n >= 1} b(n) n^{-s} I(n)

with ``b`` periodic and ``I(n)`` an inner partial sum that has a known
asymptotic expansion ``const + L log n + sum_e kappa_e n^{-e}``. The first
``M`` outer terms are summed directly; the rest is summed term by term of the
expansion, each becoming a Hurwitz zeta value over one residue class.

The expansions are divergent, so each one is truncated at its smallest term.
The error bound charged is 4 times the tail contribution of the first omitted
term.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import mpmath
from mpmath import mpf

from ..bigreal import BigReal

__all__ = ["Expansion", "periodic_double", "hat_double", "DivergentSeries"]


class DivergentSeries(ValueError):
    """The requested index/colour combination does not converge."""


@dataclass
class Expansion:
    """Asymptotic inner sum for one residue class: const + log_coeff*log n + sum coeffs[e] n^-e."""
    const: mpf = mpf(0)
    log_coeff: mpf = mpf(0)
    coeffs: dict[int, mpf] = field(default_factory=dict)
    # (exponent, |coefficient|) of the first omitted term of each constituent expansion
    omitted: list[tuple[int, mpf]] = field(default_factory=list)

    def add(self, e: int, c):
        self.coeffs[e] = self.coeffs.get(e, mpf(0)) + c


def _hurwitz_terms(r: int, alpha, scale, jmax: int):
    """Coefficients of zeta(r, x + alpha) in powers x^{1-r-j}, times ``scale^{1-r-j}``.

    Yields (j, exponent e, coefficient) with the value read as c * x0^{-e}
    where x = scale * x0.
    """
    for j in range(jmax + 1):
        if j == 0:
            c = mpf(1) / (r - 1)
        else:
            c = (-1) ** j * mpmath.bernpoly(j, alpha) / mpmath.factorial(j) * mpmath.rf(r, j - 1)
        e = r - 1 + j
        yield j, e, c * mpf(scale) ** (-e)


def _digamma_terms(alpha, scale, jmax: int):
    """Coefficients of psi(x + alpha) - log x in powers x^{-j}, x = scale * x0."""
    for j in range(1, jmax + 1):
        c = (-1) ** (j + 1) * mpmath.bernpoly(j, alpha) / j
        yield j, j, c * mpf(scale) ** (-j)


def _class_zeta(sigma: int, n0: int, N: int):
    return mpf(N) ** (-sigma) * mpmath.zeta(sigma, mpf(n0) / N)


def _class_zeta_log(sigma: int, n0: int, N: int):
    a = mpf(n0) / N
    return mpf(N) ** (-sigma) * (mpmath.log(N) * mpmath.zeta(sigma, a) - mpmath.zeta(sigma, a, 1))


def _cutoff(N: int) -> int:
    digits = mpmath.mp.dps
    return N * (int(0.5 * digits) + 24)


def _tail(s: int, N: int, b: Sequence, expansions: dict[int, Expansion], M: int) -> BigReal:
    """Sum over n > M of b(n) n^-s I(n), using the per-class expansions."""
    total = mpf(0)
    err = mpf(0)
    reg_const = mpf(0)
    reg_log = mpf(0)
    for c in range(N):
        if not b[c]:
            continue
        exp = expansions[c]
        n0 = M + 1 + ((c - M - 1) % N)
        a = mpf(n0) / N
        if s == 1:
            # sum_c b_c = 0 cancels the poles; keep the finite parts
            reg_const += b[c] * exp.const * (-mpmath.digamma(a)) / N
            if exp.log_coeff:
                lg = mpmath.log(N)
                reg_log += b[c] * exp.log_coeff * (-lg * mpmath.digamma(a) + mpmath.stieltjes(1, a) - lg * lg / 2) / N
        else:
            total += b[c] * exp.const * _class_zeta(s, n0, N)
            if exp.log_coeff:
                total += b[c] * exp.log_coeff * _class_zeta_log(s, n0, N)
        for e, kappa in exp.coeffs.items():
            total += b[c] * kappa * _class_zeta(s + e, n0, N)
        for e, kappa in exp.omitted:
            err += 4 * abs(b[c] * kappa) * _class_zeta(s + e, n0, N)
    total += reg_const + reg_log
    return BigReal(total, err + abs(total) * mpf(10) ** (5 - mpmath.mp.dps))


def _truncate(terms, tol, x0) -> tuple[list[tuple[int, mpf]], tuple[int, mpf]]:
    """Take terms until one drops below ``tol``.

    Bernoulli-type coefficients at a rational shift do not decrease monotonically,
    so the stop is by size. The terms keep shrinking up to j ~ 2 pi x0.
    """
    kept: list[tuple[int, mpf]] = []
    jmax = int(5 * x0)
    for j, e, c in terms:
        size = abs(c)
        if size == 0:
            continue
        if j > 1 and size < tol:
            return kept, (e, c)
        if j > jmax:
            return kept, (e, c)
        kept.append((e, c))
    raise RuntimeError("expansion ran out of terms")  # pragma: no cover


def periodic_double(r: int, s: int, a: Sequence, b: Sequence, N: int) -> BigReal:
    """sum_{0<m<n} a(m) b(n) m^-r n^-s with ``a``, ``b`` periodic mod ``N`` (index = residue)."""
    if r < 1 or s < 1:
        raise DivergentSeries("indices must be positive")
    if s == 1 and sum(b) != 0:
        raise DivergentSeries("0<m<n sum with s=1 diverges unless the outer colour averages to zero")
    if r == 1 and s == 1 and sum(a) != 0:
        raise DivergentSeries("r=s=1 with an unbalanced inner colour is not supported")
    M = _cutoff(N)
    tol = mpf(10) ** (-mpmath.mp.dps - 5)
    # head
    inner = mpf(0)
    head = mpf(0)
    for n in range(1, M + 1):
        if b[n % N]:
            head += b[n % N] * inner / mpf(n) ** s
        if a[n % N]:
            inner += a[n % N] / mpf(n) ** r
    head_err = abs(head) * M * mpf(10) ** (3 - mpmath.mp.dps) + mpf(10) ** (-mpmath.mp.dps)
    # per-class expansions of I(n) = sum_{m<n} a(m) m^-r
    expansions: dict[int, Expansion] = {}
    x0 = mpf(M) / N
    for c in range(N):
        if not b[c]:
            continue
        ex = Expansion()
        for cp in range(N):
            if not a[cp]:
                continue
            alpha = mpf((cp - c) % N) / N
            start = cp if cp else N
            if r == 1:
                ex.const += a[cp] * (-mpmath.log(N) - mpmath.digamma(mpf(start) / N)) / N
                ex.log_coeff += mpf(a[cp]) / N
                terms = ((j, e, cc * mpf(N) ** e / N) for j, e, cc in _digamma_terms(alpha, 1, 10 * M))
                sign = 1
            else:
                ex.const += a[cp] * mpf(N) ** (-r) * mpmath.zeta(r, mpf(start) / N)
                terms = ((j, e, cc * mpf(N) ** (e - r)) for j, e, cc in _hurwitz_terms(r, alpha, 1, 10 * M))
                sign = -1
            kept, omitted = _truncate(((j, e, cc * x0 ** (-e)) for j, e, cc in terms), tol, x0)
            for e, val in kept:
                ex.add(e, sign * a[cp] * val * x0 ** e)
            oe, oval = omitted
            ex.omitted.append((oe, abs(a[cp] * oval) * x0 ** oe))
        expansions[c] = ex
    tail = _tail(s, N, b, expansions, M)
    return BigReal(head + tail.value, head_err + tail.error)


def hat_double(r: int, s: int) -> BigReal:
    """sum_{0<m<n} (m+n)^-r n^-s."""
    if r < 1 or s < 2:
        raise DivergentSeries("zeta_hat needs r >= 1 and s >= 2")
    M = _cutoff(1)
    tol = mpf(10) ** (-mpmath.mp.dps - 5)
    # head: I(n) = sum_{u=n+1}^{2n-1} u^-r
    powers = [mpf(0)] + [mpf(u) ** (-r) for u in range(1, 2 * M)]
    head = mpf(0)
    inner = mpf(0)
    for n in range(2, M + 1):
        # moving from n-1 to n: add u = 2n-2, 2n-1 and drop u = n
        inner += powers[2 * n - 2] + powers[2 * n - 1] - powers[n]
        head += inner / mpf(n) ** s
    head_err = abs(head) * M * mpf(10) ** (3 - mpmath.mp.dps) + mpf(10) ** (-mpmath.mp.dps)
    x0 = mpf(M)
    ex = Expansion()
    if r == 1:
        ex.const = mpmath.log(2)
        a_terms = _digamma_terms(0, 2, 400)
        b_terms = _digamma_terms(1, 1, 400)
        # psi(2n) - psi(n+1)
        combined = ((j, e, ca - cb) for (j, e, ca), (_, _, cb) in zip(a_terms, b_terms))
    else:
        a_terms = _hurwitz_terms(r, 1, 1, 400)
        b_terms = _hurwitz_terms(r, 0, 2, 400)
        # zeta(r, n+1) - zeta(r, 2n)
        combined = ((j, e, ca - cb) for (j, e, ca), (_, _, cb) in zip(a_terms, b_terms))
    kept, omitted = _truncate(((j, e, c * x0 ** (-e)) for j, e, c in combined), tol, x0)
    for e, val in kept:
        ex.add(e, val * x0 ** e)
    ex.omitted = [(omitted[0], abs(omitted[1]) * x0 ** omitted[0])]
    tail = _tail(s, 1, [1], {0: ex}, M)
    return BigReal(head + tail.value, head_err + tail.error)
