"""Scalar functions paired with their small-``x`` expansions.

Near ``x = 0`` every ratio, envelope and gap function in this package
differs from its limit by ``O(x**4)`` or less, which binary64 cannot
resolve once ``x`` drops below about ``1e-4``.  A :class:`Quantity` keeps
the plain evaluator together with a series ``P`` such that
``f(x) = x**power * P(x**4)`` near zero, so the verifier can recover the
sign of a slack or a monotone step where direct subtraction returns 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .series import Series, arc_series, revert

__all__ = ["Quantity", "arc_over_x", "inverse_over_x", "root", "SERIES_LIMIT"]

# below this |x| the truncated series is accurate to far beyond binary64
SERIES_LIMIT = 0.2

_ARC = {
    "arcsl": (Fraction(-1, 2), -1),
    "arcslh": (Fraction(-1, 2), 1),
    "arctl": (Fraction(-3, 4), 1),
    "arctlh": (Fraction(-3, 4), -1),
}
_INVERSE_OF = {"sl": "arcsl", "slh": "arcslh", "tl": "arctl", "tlh": "arctlh"}
SIGN = {"arcsl": -1, "arcslh": 1, "arctl": 1, "arctlh": -1}


@dataclass(frozen=True)
class Quantity:
    func: Callable[[float], float]
    series: Series | None = None
    power: int = 0
    name: str = ""

    def __call__(self, x: float) -> float:
        return self.func(x)

    def expand(self, x: float) -> float:
        return x**self.power * self.series(x**4)


@lru_cache(maxsize=None)
def arc_over_x(name: str) -> Series:
    return arc_series(*_ARC[name])


@lru_cache(maxsize=None)
def inverse_over_x(name: str) -> Series:
    return revert(arc_over_x(_INVERSE_OF[name]))


@lru_cache(maxsize=None)
def root(sign: int, q: Fraction) -> Series:
    """``(1 + sign*x**4)**q`` as a series in ``u``."""
    return Series.binomial(q, sign)
