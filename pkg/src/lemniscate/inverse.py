"""Lemniscate functions sl, slh, tl, tlh as inverses of the arc functions.

Each inverse is found by Newton's method safeguarded with bisection, with
the residual measured in the arc domain (``|arcF(y) - x|``) so one stopping
rule serves bounded and unbounded branches alike.  Near the poles the
iteration runs on a bounded auxiliary variable instead of ``y``:

* ``sl`` near ``omega`` solves for ``v = sqrt(1 - y)`` from the tail
  integral, which keeps ``1 - sl`` accurate to full relative precision;
* ``slh`` beyond ``K/2`` uses ``slh(x) = 1 / slh(K - x)``.

All four are odd; negative arguments are reflected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import arc
from .constants import k_const, omega
from .errors import ConvergenceError, DomainError
from .quadrature import integrate

__all__ = [
    "InversionConfig", "DEFAULT_CONFIG",
    "sl", "slh", "tl", "tlh",
    "d_sl", "d_slh", "d_tl", "d_tlh",
    "sqrt_one_minus_sl4", "sqrt_one_plus_slh4",
    "d_sqrt_one_minus_sl4", "d_sqrt_one_plus_slh4",
    "INVERSE_FUNCTIONS",
]


@dataclass(frozen=True)
class InversionConfig:
    tol: float = 1e-14
    max_newton_steps: int = 40
    max_bisection_steps: int = 120

    def __post_init__(self):
        if not self.tol >= 1e-14:
            raise ValueError("tol must be >= 1e-14")
        if self.max_newton_steps < 8 or self.max_bisection_steps < 80:
            raise ValueError("need max_newton_steps >= 8 and max_bisection_steps >= 80")


DEFAULT_CONFIG = InversionConfig()


def _safeguarded_newton(resid, newton_step, lo, hi, y, cfg):
    """Root of increasing ``resid`` in ``[lo, hi]``.

    ``newton_step(y, r)`` returns the Newton correction for residual ``r``.
    """
    newton = bisect = 0
    while True:
        r = resid(y)
        if abs(r) <= cfg.tol:
            return y
        if r > 0:
            hi = y
        else:
            lo = y
        if hi - lo <= 2 * math.ulp(hi):
            return y
        y_new = y - newton_step(y, r)
        if lo < y_new < hi and newton < cfg.max_newton_steps:
            newton += 1
            if y_new == y:
                return y
            y = y_new
        elif bisect < cfg.max_bisection_steps:
            bisect += 1
            y = 0.5 * (lo + hi)
        else:
            raise ConvergenceError("inversion did not converge", estimate=y)


@lru_cache(maxsize=1)
def _sl_switch() -> float:
    return arc.arcsl(arc.SERIES_RADIUS).value


def _tail_dv(v):
    # d/dv of arcsl_tail(v**2)
    c = v * v
    return 2.0 / math.sqrt((2.0 - c) * (1.0 + (1.0 - c) ** 2))


@lru_cache(maxsize=1 << 16)
def _sl_pair(ax: float, cfg: InversionConfig) -> tuple[float, float]:
    """``(sl(ax), 1 - sl(ax))`` for ``0 <= ax < omega``."""
    if ax <= _sl_switch():
        y = _safeguarded_newton(
            lambda y: arc._arcsl_pos(y)[0] - ax,
            lambda y, r: r * math.sqrt(arc._one_minus_x4(y)),
            0.0, arc.SERIES_RADIUS, min(ax, arc.SERIES_RADIUS), cfg,
        )
        return y, 1.0 - y
    gap = omega() - ax
    vmax = math.sqrt(1.0 - arc.SERIES_RADIUS)
    v = _safeguarded_newton(
        lambda v: arc.arcsl_tail(v * v)[0] - gap,
        lambda v, r: r / _tail_dv(v),
        0.0, vmax, min(gap, vmax), cfg,
    )
    c = v * v
    return 1.0 - c, c


@lru_cache(maxsize=1 << 16)
def _slh_pair(ax: float, cfg: InversionConfig) -> tuple[float, float | None]:
    """``(slh(ax), 1/slh(ax))`` for ``0 <= ax < K``; the reciprocal only
    when ``slh(ax) > 1``, otherwise ``None``."""
    kk = k_const()
    if ax <= 0.5 * kk:
        y = _safeguarded_newton(
            lambda y: arc._arcslh_pos(y)[0] - ax,
            lambda y, r: r * math.sqrt(1.0 + y**4),
            0.0, 1.0, min(ax, 1.0), cfg,
        )
        return y, None
    z, _ = _slh_pair(kk - ax, cfg)
    return 1.0 / z, z


def _check(x, bound, name, closed=False):
    if not math.isfinite(x):
        raise DomainError(f"{name}: argument must be finite, got {x!r}")
    ax = abs(x)
    if ax > bound or (ax == bound and not closed):
        raise DomainError(f"{name}: |x| must be < {bound!r}, got {x!r}")
    return ax


def _one_minus_sl4(ax, cfg):
    y, c = _sl_pair(ax, cfg)
    if y > arc.SERIES_RADIUS:
        return c * (2.0 - c) * (1.0 + (1.0 - c) ** 2)
    return arc._one_minus_x4(y)


def sl(x: float, config: InversionConfig | None = None, *, closed: bool = False) -> float:
    """Lemniscate sine on ``(-omega, omega)``.

    ``closed=True`` also accepts ``x = +-omega`` and returns ``+-1``.
    """
    ax = _check(x, omega(), "sl", closed)
    if ax == omega():
        return math.copysign(1.0, x)
    return math.copysign(_sl_pair(ax, config or DEFAULT_CONFIG)[0], x)


def slh(x: float, config: InversionConfig | None = None) -> float:
    """Hyperbolic lemniscate sine on ``(-K, K)``; unbounded at the ends."""
    ax = _check(x, k_const(), "slh")
    return math.copysign(_slh_pair(ax, config or DEFAULT_CONFIG)[0], x)


def tl(x: float, config: InversionConfig | None = None) -> float:
    """Lemniscate tangent, ``sl / (1 - sl**4)**(1/4)``, on ``(-omega, omega)``."""
    ax = _check(x, omega(), "tl")
    cfg = config or DEFAULT_CONFIG
    y, _ = _sl_pair(ax, cfg)
    rest = _one_minus_sl4(ax, cfg)
    if rest <= 0:
        raise ConvergenceError(f"tl: sl({x!r}) rounded to 1")
    return math.copysign(y / rest**0.25, x)


def tlh(x: float, config: InversionConfig | None = None, *, closed: bool = False) -> float:
    """Hyperbolic lemniscate tangent, ``slh / (1 + slh**4)**(1/4)``, on ``(-K, K)``."""
    ax = _check(x, k_const(), "tlh", closed)
    if ax == k_const():
        return math.copysign(1.0, x)
    y, z = _slh_pair(ax, config or DEFAULT_CONFIG)
    if z is None:
        val = y / (1.0 + y**4) ** 0.25
    else:
        val = (1.0 + z**4) ** -0.25
    return math.copysign(val, x)


def d_sl(x: float, config: InversionConfig | None = None) -> float:
    """``sqrt(1 - sl(x)**4)``."""
    ax = _check(x, omega(), "d_sl")
    return math.sqrt(_one_minus_sl4(ax, config or DEFAULT_CONFIG))


def d_slh(x: float, config: InversionConfig | None = None) -> float:
    """``sqrt(1 + slh(x)**4)``."""
    ax = _check(x, k_const(), "d_slh")
    y, z = _slh_pair(ax, config or DEFAULT_CONFIG)
    if z is None:
        return math.sqrt(1.0 + y**4)
    return math.sqrt(1.0 + z**4) / (z * z)


def d_tl(x: float, config: InversionConfig | None = None) -> float:
    """``(1 + tl(x)**4)**(3/4)``, evaluated as ``(1 - sl**4)**(-3/4)``."""
    ax = _check(x, omega(), "d_tl")
    return _one_minus_sl4(ax, config or DEFAULT_CONFIG) ** -0.75


def d_tlh(x: float, config: InversionConfig | None = None) -> float:
    """``(1 - tlh(x)**4)**(3/4)``, evaluated as ``(1 + slh**4)**(-3/4)``."""
    ax = _check(x, k_const(), "d_tlh")
    y, z = _slh_pair(ax, config or DEFAULT_CONFIG)
    if z is None:
        return (1.0 + y**4) ** -0.75
    return z**3 * (1.0 + z**4) ** -0.75


sqrt_one_minus_sl4 = d_sl
sqrt_one_plus_slh4 = d_slh


def d_sqrt_one_minus_sl4(x: float, config: InversionConfig | None = None) -> float:
    """Derivative of ``sqrt(1 - sl(x)**4)``, which is ``-2 sl(x)**3``."""
    return -2.0 * sl(x, config) ** 3


def d_sqrt_one_plus_slh4(x: float, config: InversionConfig | None = None) -> float:
    """Derivative of ``sqrt(1 + slh(x)**4)``, which is ``2 slh(x)**3``."""
    return 2.0 * slh(x, config) ** 3


INVERSE_FUNCTIONS = {"sl": sl, "slh": slh, "tl": tl, "tlh": tlh}
