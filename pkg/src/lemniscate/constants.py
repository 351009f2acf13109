"""Lemniscate constants from the arithmetic-geometric mean.

``omega`` is the arc length of a quarter of the lemniscate ``r**2 = cos 2t``
and ``k_const`` its hyperbolic companion ``sqrt(2) * omega``.  Both are
computed here without reference to the function evaluators so that the
evaluators can be checked against them.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = ["LemniscateConstants", "agm", "omega", "k_const", "constants"]

_AGM_MAX_ITER = 8


@dataclass(frozen=True)
class LemniscateConstants:
    omega: float
    K_const: float
    digits_valid: int = 13


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive reals.

    Iterates ``(a, b) -> ((a + b) / 2, sqrt(a * b))`` until the two
    sequences agree to within 4 ulp.

    >>> agm(1.0, 1.0)
    1.0
    """
    if not (math.isfinite(a) and math.isfinite(b)) or a <= 0 or b <= 0:
        raise DomainError(f"agm needs finite positive arguments, got ({a!r}, {b!r})")
    if a < b:
        a, b = b, a
    for _ in range(_AGM_MAX_ITER + 1):
        if a - b <= 4 * math.ulp(a):
            return a
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    raise ConvergenceError("agm did not converge", estimate=a)


_lock = threading.Lock()
_cache: LemniscateConstants | None = None


def constants() -> LemniscateConstants:
    """Return the cached constant pair, computing it on first use."""
    global _cache
    if _cache is None:
        with _lock:
            if _cache is None:
                # complete elliptic integral K(1/sqrt 2) = pi / (2 agm(1, 1/sqrt 2))
                kk = math.pi / (2.0 * agm(1.0, math.sqrt(0.5)))
                w = kk * math.sqrt(0.5)
                _cache = LemniscateConstants(omega=w, K_const=math.sqrt(2.0) * w)
    return _cache


def omega() -> float:
    """The lemniscate constant, arcsl(1) ~= 1.3110287771461."""
    return constants().omega


def k_const() -> float:
    """``sqrt(2) * omega``, the limit of arcslh at +infinity."""
    return constants().K_const
