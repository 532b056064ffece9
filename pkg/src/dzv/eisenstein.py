"""q-expansions of (regularized, half-shifted) double Eisenstein series.

Coefficients are kept exactly as Q-linear combinations of monomials
``zeta-part * (2 pi i)^j``. Even single zeta values are rewritten via
zeta(2k) = -B_2k (2 pi i)^2k / (2 (2k)!), so zeta parts are products of odd
single zeta values and (only in constant terms) double zeta values. Numbers
enter only when a coefficient is evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

import mpmath
from mpmath import mpf

from .bigreal import BigReal
from .rational import bernoulli, binom
from .symbols import Symbol, Z

__all__ = [
    "QCoeff", "QSeries", "divisor_sigma", "g_rational", "g2_rational", "gstar_rational",
    "g_series", "g2_series", "gstar_series", "G_series", "G_double_series", "Greg_series",
    "Ghalf_series", "delta_qexp", "e4_qexp", "s16_eigenform", "hecke_identity", "HeckeReport",
    "verify_hecke", "fitted_constant", "double_shuffle_residuals", "harmonic_product_residuals", "lipschitz_check",
    "HECKE_DATA",
]

# monomial key: (sorted tuple of zeta symbols, power of 2 pi i)
Key = tuple[tuple[Symbol, ...], int]


@dataclass(frozen=True)
class QCoeff:
    """Exact element of Q[zeta values][2 pi i]."""
    terms: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: Fraction(v) for k, v in self.terms.items() if v})

    @classmethod
    def of(cls, c=1, zetas: Sequence[Symbol] = (), power: int = 0) -> "QCoeff":
        zs: list[Symbol] = []
        c = Fraction(c)
        for z in zetas:
            if z.family == "Z" and len(z.indices) == 1:
                k = z.indices[0]
                if k == 1:
                    return cls()  # zeta(1) := 0
                if k % 2 == 0:
                    c *= -bernoulli(k) / (2 * factorial(k))
                    power += k
                    continue
            zs.append(z)
        return cls({(tuple(sorted(zs)), power): c})

    def __add__(self, other: "QCoeff") -> "QCoeff":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return QCoeff(out)

    def __neg__(self):
        return QCoeff({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "QCoeff":
        c = Fraction(c)
        return QCoeff({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "QCoeff") -> "QCoeff":
        out: dict[Key, Fraction] = {}
        for (z1, p1), v1 in self.terms.items():
            for (z2, p2), v2 in other.terms.items():
                key = (tuple(sorted(z1 + z2)), p1 + p2)
                out[key] = out.get(key, Fraction(0)) + v1 * v2
        return QCoeff(out)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, eps: float = 1e-25) -> tuple[BigReal, BigReal]:
        """(real part, imaginary part)."""
        from .numerics import working_dps
        d = working_dps(eps)
        with mpmath.workdps(d):
            re = BigReal.exact(0)
            im = BigReal.exact(0)
            two_pi = BigReal(2 * mpmath.pi, 2 * mpmath.pi * mpf(10) ** (2 - d))
            for (zs, j), c in self.terms.items():
                x = BigReal.exact(c)
                for z in zs:
                    x = x * _value(z, eps, d)
                for _ in range(j):
                    x = x * two_pi
                # i^j
                if j % 4 == 2 or j % 4 == 3:
                    x = -x
                if j % 2:
                    im = im + x
                else:
                    re = re + x
            return re, im

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (zs, j), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], [str(z) for z in kv[0][0]])):
            mono = "*".join([str(z) for z in zs] + ([f"(2 pi i)^{j}"] if j else []))
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _value(z: Symbol, eps, d) -> BigReal:
    from .numerics import evaluate, zeta, zeta_double
    if z.family == "Z" and len(z.indices) == 2 and z.indices[1] == 1:
        r = z.indices[0]
        # zeta(r,1) := -zeta(r+1) - zeta(1,r)
        return -zeta(r + 1, eps=eps, dps=d) - zeta_double(1, r, eps=eps, dps=d)
    return evaluate(z, eps=eps, dps=d)


@dataclass(frozen=True)
class QSeries:
    weight: int
    coeffs: tuple[QCoeff, ...]

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "QSeries") -> "QSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return QSeries(self.weight, tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "QSeries":
        return QSeries(self.weight, tuple(x.scale(c) for x in self.coeffs))

    def times(self, c: QCoeff) -> "QSeries":
        return QSeries(self.weight, tuple(x * c for x in self.coeffs))

    def __mul__(self, other: "QSeries") -> "QSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        out = []
        for m in range(n):
            acc = QCoeff()
            for i in range(m + 1):
                acc = acc + self.coeffs[i] * other.coeffs[m - i]
            out.append(acc)
        return QSeries(self.weight + other.weight, tuple(out))

    def __getitem__(self, n: int) -> QCoeff:
        return self.coeffs[n]


def _series(weight: int, M: int, rationals: Sequence[Fraction], factor: QCoeff, const: QCoeff | None = None):
    coeffs = [const or QCoeff()] + [factor.scale(rationals[n]) for n in range(1, M + 1)]
    return QSeries(weight, tuple(coeffs))


# divisor-style rational parts ------------------------------------------------------------

def divisor_sigma(k: int, n: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def g_rational(k: int, n: int) -> int:
    """sum_{l, m > 0, l m = n} m^(k-1)."""
    return divisor_sigma(k - 1, n) if n > 0 else 0


def gstar_rational(k: int, n: int) -> int:
    """sum_{l m = n} l m^k."""
    return sum((n // d) * d ** k for d in range(1, n + 1) if n % d == 0) if n > 0 else 0


@lru_cache(maxsize=None)
def g2_rational(r: int, s: int, n: int) -> int:
    """sum over 0 < l1 < l2, n1, n2 > 0 with l1 n1 + l2 n2 = n of n1^(r-1) n2^(s-1)."""
    total = 0
    for l1 in range(1, n + 1):
        for n1 in range(1, (n - 1) // l1 + 1):
            rest = n - l1 * n1
            for l2 in range(l1 + 1, rest + 1):
                if rest % l2 == 0:
                    total += n1 ** (r - 1) * (rest // l2) ** (s - 1)
    return total


def _minus_2pi_i(k: int) -> QCoeff:
    """(-2 pi i)^k."""
    return QCoeff.of((-1) ** k, power=k)


def g_series(k: int, M: int) -> QSeries:
    f = _minus_2pi_i(k).scale(Fraction(1, factorial(k - 1)))
    return _series(k, M, [Fraction(g_rational(k, n)) for n in range(M + 1)], f)


def g2_series(r: int, s: int, M: int) -> QSeries:
    f = _minus_2pi_i(r + s).scale(Fraction(1, factorial(r - 1) * factorial(s - 1)))
    return _series(r + s, M, [Fraction(g2_rational(r, s, n)) for n in range(M + 1)], f)


def gstar_series(k: int, M: int) -> QSeries:
    """g*_k = -(-2 pi i)^(k+1)/k! sum l n^k q^(l n); weight k + 1 as a function of z."""
    f = _minus_2pi_i(k + 1).scale(Fraction(-1, factorial(k)))
    return _series(k + 1, M, [Fraction(gstar_rational(k, n)) for n in range(M + 1)], f)


def G_series(k: int, M: int) -> QSeries:
    """zeta(k) + (-2 pi i)^k/(k-1)! sum sigma_{k-1}(n) q^n."""
    g = g_series(k, M)
    return QSeries(k, (QCoeff.of(1, [Z(k)]),) + g.coeffs[1:])


def _C_binomial_part(p: int, r: int, s: int) -> int:
    return (-1) ** r * binom(p - 1, r - 1) + (-1) ** ((p - s) % 2) * binom(p - 1, s - 1)


def G_double_series(r: int, s: int, M: int) -> QSeries:
    """Fourier expansion of G_{r,s} (r, s >= 2), without the epsilon correction."""
    if r < 2 or s < 2:
        raise ValueError("G_{r,s} needs r, s >= 2; use Greg_series")
    return _greg(r, s, M, with_eps=False)


def _greg(r: int, s: int, M: int, with_eps: bool) -> QSeries:
    k = r + s
    out = g2_series(r, s, M)
    const = QCoeff.of(1, [Z(r, s)])
    out = QSeries(k, (const,) + out.coeffs[1:])
    if r > 1:
        out = out + g_series(s, M).times(QCoeff.of(1, [Z(r)]))
    for p in range(2, k):
        h = k - p
        c = _C_binomial_part(p, r, s)
        if c:
            out = out + g_series(h, M).times(QCoeff.of(c, [Z(p)]))
    if with_eps:
        out = out + epsilon_series(r, s, M).scale(Fraction(1, 2))
    return out


def epsilon_series(r: int, s: int, M: int) -> QSeries:
    """2 pi i (d_{s,2} g*_r - d_{s,1} g*_{r-1} + d_{r,1} (g*_{s-1} + g_s)) + d_{r,1} d_{s,1} g_2."""
    k = r + s
    acc = QSeries(k - 1, tuple(QCoeff() for _ in range(M + 1)))
    if s == 2:
        acc = acc + gstar_series(r, M)
    if s == 1:
        acc = acc - gstar_series(r - 1, M)
    if r == 1:
        acc = acc + gstar_series(s - 1, M) + g_series(s, M)
    out = acc.times(QCoeff.of(1, power=1))
    if r == 1 and s == 1:
        out = out + g_series(2, M)
    return QSeries(k, out.coeffs)


def Greg_series(r: int, s: int, M: int) -> QSeries:
    if r < 1 or s < 1 or r + s < 3:
        raise ValueError("G^reg_{r,s} needs r, s >= 1 and r + s >= 3")
    return _greg(r, s, M, with_eps=True)


def Ghalf_series(r: int, s: int, M: int) -> QSeries:
    return Greg_series(r, s, M) + G_series(r + s, M).scale(Fraction(1, 2))


# cusp forms --------------------------------------------------------------------------------

def delta_qexp(M: int) -> list[int]:
    """Coefficients of q prod (1 - q^n)^24 up to q^M."""
    if M < 1:
        raise ValueError("M must be >= 1")
    poly = [0] * (M + 1)
    poly[0] = 1
    for n in range(1, M + 1):
        for _ in range(24):
            for i in range(M, n - 1, -1):
                poly[i] -= poly[i - n]
    return [0] + poly[:M]


def e4_qexp(M: int) -> list[int]:
    return [1] + [240 * divisor_sigma(3, n) for n in range(1, M + 1)]


def s16_eigenform(M: int) -> list[int]:
    """E_4 * Delta, the normalized generator of S_16."""
    e4, d = e4_qexp(M), delta_qexp(M)
    return [sum(e4[i] * d[n - i] for i in range(n + 1)) for n in range(M + 1)]


# (weight) -> (coefficients a_{r,s} for odd r, normalizing denominator c, cusp form)
HECKE_DATA = {
    12: ({(9, 3): 22680, (7, 5): -35364, (5, 7): -29145, (3, 9): 13006, (1, 11): 22680}, 680, delta_qexp),
    16: ({(1, 15): 1081080, (3, 13): 842358, (5, 11): -275295, (7, 9): -1400182, (9, 7): -1360395,
          (11, 5): -351252, (13, 3): 1081080}, 322560, s16_eigenform),
}


def hecke_identity(weight: int, M: int, constant: int | None = None) -> tuple[QSeries, QSeries]:
    """(sum a_{r,s} G^(1/2)_{r,s}, (2 pi i)^k / c * f) truncated at q^M.

    ``c`` defaults to the tabulated normalizing constant.
    """
    if weight not in HECKE_DATA:
        raise ValueError("weight must be 12 or 16")
    coeffs, c, form = HECKE_DATA[weight]
    c = constant or c
    lhs = QSeries(weight, tuple(QCoeff() for _ in range(M + 1)))
    for (r, s), a in coeffs.items():
        lhs = lhs + Ghalf_series(r, s, M).scale(a)
    f = form(M)
    unit = QCoeff.of(Fraction(1, c), power=weight)
    rhs = QSeries(weight, tuple(unit.scale(f[n]) for n in range(M + 1)))
    return lhs, rhs


def fitted_constant(weight: int) -> Fraction:
    """The c for which the q^1 coefficients agree: lhs_1 = (2 pi i)^k / c."""
    lhs, _ = hecke_identity(weight, 1)
    key = ((), weight)
    if set(lhs[1].terms) != {key}:
        raise ArithmeticError("q^1 coefficient is not a rational multiple of (2 pi i)^k")
    return 1 / lhs[1].terms[key]


@dataclass(frozen=True)
class HeckeReport:
    weight: int
    constant: int
    residuals: tuple[mpf, ...]
    exact: tuple[bool, ...]
    tolerance: float
    passed: bool

    def rows(self):
        for n, (res, ex) in enumerate(zip(self.residuals, self.exact)):
            yield {"n": n, "residual": mpmath.nstr(res, 6), "exact": ex, "pass": ex or res <= self.tolerance}


def _abs_residual(c: QCoeff, eps: float) -> tuple[mpf, mpf]:
    re, im = c.evaluate(eps)
    return mpmath.sqrt(re.value ** 2 + im.value ** 2), re.error + im.error


def verify_hecke(weight: int, M: int = 20, eps: float = 1e-20, constant: int | None = None) -> HeckeReport:
    """Compare both sides coefficientwise.

    A difference that vanishes as an exact element of Q[zeta][2 pi i] counts
    as exact. Otherwise the difference is evaluated numerically, relative to
    the size of the right-hand coefficient.
    """
    lhs, rhs = hecke_identity(weight, M, constant)
    residuals, exact, ok = [], [], True
    for n in range(M + 1):
        diff = lhs[n] - rhs[n]
        if diff.is_zero():
            residuals.append(mpf(0))
            exact.append(True)
            continue
        res, _ = _abs_residual(diff, eps)
        scale = max(mpf(1), _abs_residual(rhs[n], eps)[0]) if not rhs[n].is_zero() else mpf(1)
        rel = res / scale
        residuals.append(rel)
        exact.append(False)
        ok = ok and rel <= eps
    return HeckeReport(weight, constant or HECKE_DATA[weight][1], tuple(residuals), tuple(exact), eps, ok)


def double_shuffle_residuals(k: int, M: int = 10) -> dict[tuple[int, int], list[QCoeff]]:
    """G^reg_{r,s} + G^reg_{s,r} + G_k - sum (C(p-1,r-1) + C(p-1,s-1)) G^reg_{h,p}, per coefficient."""
    out = {}
    Gk = G_series(k, M)
    regs = {(h, k - h): Greg_series(h, k - h, M) for h in range(1, k)}
    for r in range(1, k):
        s = k - r
        acc = regs[(r, s)] + regs[(s, r)] + Gk
        for h in range(1, k):
            p = k - h
            c = binom(p - 1, r - 1) + binom(p - 1, s - 1)
            if c:
                acc = acc - regs[(h, p)].scale(c)
        out[(r, s)] = list(acc.coeffs)
    return out


def harmonic_product_residuals(r: int, s: int, M: int = 10) -> list[QCoeff]:
    """G_r G_s - G_{r,s} - G_{s,r} - G_{r+s}, per coefficient (r, s >= 3)."""
    lhs = G_series(r, M) * G_series(s, M)
    rhs = G_double_series(r, s, M) + G_double_series(s, r, M) + G_series(r + s, M)
    return list((lhs - rhs).coeffs)


def lipschitz_check(k: int, z: complex, terms: int = 60, dps: int = 40) -> mpf:
    """|sum_m (z+m)^-k - (-2 pi i)^k/(k-1)! sum n^(k-1) q^n|."""
    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        lhs = mpmath.nsum(lambda m: (z + m) ** (-k), [-mpmath.inf, mpmath.inf])
        q = mpmath.exp(2j * mpmath.pi * z)
        rhs = (-2j * mpmath.pi) ** k / mpmath.factorial(k - 1) * mpmath.fsum(
            mpmath.mpf(n) ** (k - 1) * q ** n for n in range(1, terms + 1))
        return abs(lhs - rhs)
