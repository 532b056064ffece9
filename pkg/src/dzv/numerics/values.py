"""Evaluators for the value families appearing in the relation catalogue.

All functions take a target absolute error ``eps`` and return a
:class:`~dzv.bigreal.BigReal`. Working precision is chosen from ``eps``
(15 guard digits, at least 50 significant digits) unless ``dps`` is given.
"""
from __future__ import annotations

import json
import math
import os
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import mpmath
from mpmath import mpf

from ..bigreal import BigReal
from ..rational import bernoulli, binom
from .series import DivergentSeries, hat_double, periodic_double

__all__ = [
    "DEFAULT_EPS", "working_dps", "zeta", "zeta_double", "zeta_half", "zeta_hat", "t_tilde",
    "t_single", "j_value", "zeta_sh", "colored2", "colored2_single", "DivergentSeries",
]

DEFAULT_EPS = 1e-25
GUARD_DIGITS = 15


def working_dps(eps: float) -> int:
    if eps <= 0:
        raise ValueError("eps must be positive")
    return max(50, int(math.ceil(-math.log10(eps))) + GUARD_DIGITS)


def _check(x: BigReal, eps: float, what: str) -> BigReal:
    if x.error > eps:
        raise ArithmeticError(f"{what}: error bound {mpmath.nstr(x.error, 3)} exceeds requested {eps}")
    return x


# disk memo ---------------------------------------------------------------------------------

def _cache_path() -> Path | None:
    d = os.environ.get("DZV_CACHE_DIR")
    return Path(d) / "values.json" if d else None


_disk: dict[str, list[str]] | None = None


def _disk_get(key: str):
    """Look up ``key``; call at the working precision the value was stored with."""
    global _disk
    path = _cache_path()
    if path is None:
        return None
    if _disk is None:
        try:
            _disk = json.loads(path.read_text())
        except (OSError, ValueError):
            _disk = {}
    hit = _disk.get(key)
    return BigReal(mpf(hit[0]), mpf(hit[1])) if hit else None


def _disk_put(key: str, x: BigReal):
    global _disk
    path = _cache_path()
    if path is None:
        return
    if _disk is None:
        _disk = {}
    _disk[key] = [mpmath.nstr(x.value, mpmath.mp.dps + 5), mpmath.nstr(x.error, 5)]
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(_disk, sort_keys=True))
    tmp.replace(path)


def _memo(name: str):
    """Cache on (args, dps) in memory and, if DZV_CACHE_DIR is set, on disk."""
    def deco(fn):
        @lru_cache(maxsize=None)
        def at_dps(args, dps):
            key = f"{name}{args}@{dps}"
            with mpmath.workdps(dps):
                hit = _disk_get(key)
                if hit is not None:
                    return hit
                out = fn(*args)
                _disk_put(key, out)
            return out

        def wrapper(*args, eps: float = DEFAULT_EPS, dps: int | None = None):
            d = dps or working_dps(eps)
            return _check(at_dps(tuple(args), d), eps, f"{name}{args}")

        wrapper.__name__ = fn.__name__
        wrapper.__doc__ = fn.__doc__
        wrapper.cache_clear = at_dps.cache_clear
        return wrapper
    return deco


# single zeta -------------------------------------------------------------------------------

@_memo("zeta")
def zeta(k: int) -> BigReal:
    """zeta(k); even k through Euler's Bernoulli formula."""
    if k < 2:
        raise ValueError("zeta(k) needs k >= 2")
    if k % 2 == 0:
        b = bernoulli(k)
        v = (-1) ** (k // 2 + 1) * mpf(b.numerator) / b.denominator * (2 * mpmath.pi) ** k \
            / (2 * mpmath.factorial(k))
    else:
        v = mpmath.zeta(k)
    return BigReal(v, abs(v) * mpf(10) ** (3 - mpmath.mp.dps))


@_memo("t_single")
def t_single(k: int) -> BigReal:
    """T(k) = 2 (1 - 2^-k) zeta(k)."""
    z = zeta(k, dps=mpmath.mp.dps)
    return z * (2 * (1 - Fraction(1, 2 ** k)))


# depth two ---------------------------------------------------------------------------------

@_memo("zeta_double")
def zeta_double(r: int, s: int) -> BigReal:
    """zeta(r, s) = sum_{0<m<n} m^-r n^-s, s >= 2."""
    if r < 1 or s < 2:
        raise DivergentSeries(f"zeta({r},{s}) diverges")
    return periodic_double(r, s, [1], [1], 1)


def _zeta_reg(r: int, s: int, dps: int) -> BigReal:
    """zeta(r, s) with zeta(r, 1) := -zeta(1, r) - zeta(r + 1)."""
    if s >= 2:
        return zeta_double(r, s, dps=dps)
    if r < 2:
        raise DivergentSeries("zeta(1,1) has no regularized value here")
    return -zeta_double(1, r, dps=dps) - zeta(r + 1, dps=dps)


@_memo("zeta_half")
def zeta_half(r: int, s: int) -> BigReal:
    """zeta(r, s) + zeta(r + s)/2; s = 1 uses the harmonic regularization."""
    if r == 1 and s == 1:
        raise DivergentSeries("zeta^(1/2)(1,1) is not defined")
    d = mpmath.mp.dps
    return _zeta_reg(r, s, d) + zeta(r + s, dps=d) * Fraction(1, 2)


@_memo("zeta_hat")
def zeta_hat(r: int, s: int) -> BigReal:
    """sum_{0<m<n} (m+n)^-r n^-s."""
    return hat_double(r, s)


@_memo("t_tilde")
def t_tilde(r: int, s: int) -> BigReal:
    """4 sum over odd m < even n of (-1)^((n-2)/2) m^-r n^-s."""
    return periodic_double(r, s, [0, 1, 0, 1], [-1, 0, 1, 0], 4) * 4


@_memo("colored2")
def colored2(a: int, b: int, r: int, s: int) -> BigReal:
    """sum_{0<m<n} (-1)^(a m + b n) m^-r n^-s."""
    a, b = a % 2, b % 2
    if s == 1 and b == 0:
        raise DivergentSeries("colour (.,0) with s = 1 diverges")
    if r == 1 and s == 1 and a == 0:
        raise DivergentSeries("colour (0,1) with r = s = 1 is not supported")
    return periodic_double(r, s, [1, (-1) ** a], [1, (-1) ** b], 2)


@_memo("colored2_single")
def colored2_single(c: int, k: int) -> BigReal:
    """sum_n (-1)^(c n) n^-k."""
    z = zeta(k, dps=mpmath.mp.dps)
    if c % 2 == 0:
        return z
    return z * (-(1 - Fraction(2, 2 ** k)))


# shuffle-regularized J-values --------------------------------------------------------------

@_memo("zeta_sh")
def zeta_sh(m: int) -> BigReal:
    """Shuffle-regularized zeta(m, 1) = -2 zeta(1, m) - sum_{j=1}^{m-2} zeta(j+1, m-j)."""
    if m < 2:
        raise DivergentSeries("zeta^sh(1,1) is not used")
    d = mpmath.mp.dps
    out = zeta_double(1, m, dps=d) * (-2)
    for j in range(1, m - 1):
        out = out - zeta_double(j + 1, m - j, dps=d)
    return out


@_memo("j_value")
def j_value(a: int, b: int, c: int) -> BigReal:
    """J(a; b, c) = (-1)^a sum_{i+j=a} C(b+i, i) C(c+j, j) zeta(b+i+1, c+j+1)."""
    if min(a, b, c) < 0:
        raise ValueError("J indices must be non-negative")
    d = mpmath.mp.dps
    out = BigReal.exact(0)
    for i in range(a + 1):
        j = a - i
        coeff = binom(b + i, i) * binom(c + j, j)
        x, y = b + i + 1, c + j + 1
        val = zeta_sh(x, dps=d) if y == 1 else zeta_double(x, y, dps=d)
        out = out + val * coeff
    return out if a % 2 == 0 else -out
