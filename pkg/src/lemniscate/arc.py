"""Arc lemniscate functions and their derivatives.

=========  ==========================================  ===============
function   definition                                  domain
=========  ==========================================  ===============
arcsl      integral of (1 - t**4)**-1/2 from 0 to x    [-1, 1]
arcslh     integral of (1 + t**4)**-1/2 from 0 to x    real line
arctl      arcsl(x / (1 + x**4)**(1/4))                real line
arctlh     arcslh(x / (1 - x**4)**(1/4))               (-1, 1)
=========  ==========================================  ===============

Small arguments use the Maclaurin series; arguments near the singular end
of arcsl go through a quadrature of the remaining tail, written in the
distance-to-one variable so the endpoint singularity sits at zero.  Large
arguments of arcslh use ``arcslh(x) + arcslh(1/x) = K``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import k_const, omega
from .errors import DomainError
from .quadrature import integrate

__all__ = [
    "EvalOutcome",
    "arcsl", "arcslh", "arctl", "arctlh",
    "d_arcsl", "d_arcslh", "d_arctl", "d_arctlh",
    "arcsl_tail", "ratio_excess", "ARC_FUNCTIONS",
]

SERIES_RADIUS = 0.9
ARCSLH_REFLECT = 1.1
_EPS = 2.220446049250313e-16
_TAIL_TOL = 1e-15


@dataclass(frozen=True)
class EvalOutcome:
    value: float
    abs_error: float
    method: str

    def __float__(self):
        return self.value


def _check_finite(x, name):
    if not math.isfinite(x):
        raise DomainError(f"{name}: argument must be finite, got {x!r}")


def _series_tail(x: float, sign: int) -> tuple[float, float]:
    """``F(x)/x - 1`` for ``F' = (1 + sign*t**4)**-1/2``, ``0 <= x <= 0.9``.

    Returns the tail sum and the magnitude of the last term added.
    """
    u = -sign * x**4
    coef = 1.0
    power = 1.0
    tail = 0.0
    n = 0
    while True:
        n += 1
        coef *= (2 * n - 1) / (2 * n)
        power *= u
        term = coef * power / (4 * n + 1)
        tail += term
        if abs(term) < 1e-17 or n > 400:
            return tail, abs(term)


def arcsl_tail(c: float) -> tuple[float, float]:
    """``omega - arcsl(1 - c)`` for ``0 <= c <= 1``, with an error estimate."""
    if c == 0:
        return 0.0, 0.0
    res = integrate(_tail_integrand, 0.0, c, _TAIL_TOL, vectorized=True)
    return res.value, res.error_estimate


def _tail_integrand(s):
    return 1.0 / np.sqrt(s * (2.0 - s) * (1.0 + (1.0 - s) ** 2))


def _arcslh_integrand(t):
    return 1.0 / np.sqrt(1.0 + t**4)


# Kernels on x >= 0 returning (value, abs_error, method, excess) where
# excess = value/x - 1 is accurate even when tiny.

def _arcsl_pos(x):
    if x <= SERIES_RADIUS:
        tail, last = _series_tail(x, -1)
        v = x * (1.0 + tail)
        return v, 2 * _EPS * v + x * last, "series", tail
    if x == 1.0:
        w = omega()
        return w, _EPS * w, "composition", w - 1.0
    t, err = arcsl_tail(1.0 - x)
    v = omega() - t
    return v, err + 2 * _EPS * v, "quadrature-tail", v / x - 1.0


def _arcslh_pos(x):
    if x <= SERIES_RADIUS:
        tail, last = _series_tail(x, 1)
        v = x * (1.0 + tail)
        return v, 2 * _EPS * v + x * last, "series", tail
    if x <= ARCSLH_REFLECT:
        res = integrate(_arcslh_integrand, 0.0, x, _TAIL_TOL, vectorized=True)
        v = res.value
        return v, res.error_estimate + 2 * _EPS * v, "quadrature", v / x - 1.0
    inv = 1.0 / x
    tail, last = _series_tail(inv, 1)
    v = k_const() - inv * (1.0 + tail)
    return v, 3 * _EPS * v + inv * last, "reflection", v / x - 1.0


def _arctl_pos(x):
    if x <= 1.0:
        q = math.expm1(-0.25 * math.log1p(x**4))      # a/x - 1
        a = x * (1.0 + q)
        v, err, _, e = _arcsl_pos(a)
        return v, err, "composition", q + (1.0 + q) * e
    comp = -math.expm1(-0.25 * math.log1p(x**-4.0))   # 1 - a
    a = 1.0 - comp
    if a <= SERIES_RADIUS:
        v, err, _, _ = _arcsl_pos(a)
    else:
        t, terr = arcsl_tail(comp)
        v = omega() - t
        err = terr + 2 * _EPS * v
    return v, err, "composition", v / x - 1.0


def _one_minus_x4(x):
    return (1.0 - x) * (1.0 + x) * (1.0 + x * x)


def _arctlh_pos(x):
    root = _one_minus_x4(x) ** 0.25
    a = x / root
    if a <= SERIES_RADIUS:
        q = math.expm1(-0.25 * math.log1p(-x**4))     # a/x - 1
        v, err, _, e = _arcslh_pos(a)
        return v, err, "composition", q + (1.0 + q) * e
    if a <= ARCSLH_REFLECT:
        v, err, _, _ = _arcslh_pos(a)
        return v, err, "composition", v / x - 1.0
    inv = root / x
    tail, last = _series_tail(inv, 1)
    v = k_const() - inv * (1.0 + tail)
    return v, 3 * _EPS * v + inv * last, "composition", v / x - 1.0


def _odd(kernel, x):
    v, err, method, _ = kernel(abs(x))
    return EvalOutcome(math.copysign(v, x) if v else 0.0 * x, err, method)


def arcsl(x: float) -> EvalOutcome:
    """Arc lemniscate sine on ``[-1, 1]``; ``arcsl(1) = omega``.

    Within 1e-10 of ``|x| = 1`` the absolute accuracy is limited by the
    square-root behaviour of the tail and may degrade towards 1e-10.
    """
    _check_finite(x, "arcsl")
    if abs(x) > 1.0:
        raise DomainError(f"arcsl: |x| must be <= 1, got {x!r}")
    return _odd(_arcsl_pos, x)


def arcslh(x: float) -> EvalOutcome:
    """Hyperbolic arc lemniscate sine; tends to ``k_const()`` at infinity."""
    _check_finite(x, "arcslh")
    return _odd(_arcslh_pos, x)


def arctl(x: float) -> EvalOutcome:
    """Arc lemniscate tangent; tends to ``omega()`` at infinity."""
    _check_finite(x, "arctl")
    return _odd(_arctl_pos, x)


def arctlh(x: float) -> EvalOutcome:
    """Hyperbolic arc lemniscate tangent on ``(-1, 1)``."""
    _check_finite(x, "arctlh")
    if abs(x) >= 1.0:
        raise DomainError(f"arctlh: |x| must be < 1, got {x!r}")
    return _odd(_arctlh_pos, x)


_KERNELS = {"arcsl": _arcsl_pos, "arcslh": _arcslh_pos, "arctl": _arctl_pos, "arctlh": _arctlh_pos}
ARC_FUNCTIONS = {"arcsl": arcsl, "arcslh": arcslh, "arctl": arctl, "arctlh": arctlh}


def ratio_excess(name: str, x: float) -> float:
    """``F(x)/x - 1`` for one of the four arc functions, without cancellation.

    ``x`` must be nonzero and inside the domain of ``F``.
    """
    ARC_FUNCTIONS[name](x)  # domain check
    if x == 0:
        raise DomainError("ratio_excess is undefined at 0")
    return _KERNELS[name](abs(x))[3]


def d_arcsl(x: float) -> float:
    """``(1 - x**4)**-1/2`` for ``|x| < 1``."""
    _check_finite(x, "d_arcsl")
    if abs(x) >= 1.0:
        raise DomainError(f"d_arcsl: |x| must be < 1, got {x!r}")
    return 1.0 / math.sqrt(_one_minus_x4(abs(x)))


def d_arcslh(x: float) -> float:
    """``(1 + x**4)**-1/2``."""
    _check_finite(x, "d_arcslh")
    ax = abs(x)
    if ax > 1.0:
        return 1.0 / (ax * ax * math.sqrt(1.0 + ax**-4.0))
    return 1.0 / math.sqrt(1.0 + ax**4)


def d_arctl(x: float) -> float:
    """``(1 + x**4)**-3/4``."""
    _check_finite(x, "d_arctl")
    ax = abs(x)
    if ax > 1.0:
        return ax**-3.0 * (1.0 + ax**-4.0) ** -0.75
    return (1.0 + ax**4) ** -0.75


def d_arctlh(x: float) -> float:
    """``(1 - x**4)**-3/4`` for ``|x| < 1``."""
    _check_finite(x, "d_arctlh")
    if abs(x) >= 1.0:
        raise DomainError(f"d_arctlh: |x| must be < 1, got {x!r}")
    return _one_minus_x4(abs(x)) ** -0.75
