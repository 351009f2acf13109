"""Shafer-Fink envelopes and the auxiliary functions behind them.

An envelope bounds ``F(x)/x`` for one of the four arc functions by

    numerator / (denom_const + denom_coeff * r(x)),

with ``r(x) = (1 +- x**4)**(1/4)`` or ``(1 +- x**4)**(1/2)`` and
``numerator = denom_const + denom_coeff`` so that the envelope equals 1 at
``x = 0``.  Whether such an envelope holds is decided by the range of the
"gap" function ``((1 - r) - r*e) / e`` with ``e = F(x)/x - 1``: the
envelope is sharp exactly when its ratio ``denom_const / denom_coeff`` is an
endpoint of that range.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable

from . import arc, inverse
from .constants import k_const, omega
from .errors import DomainError
from .expansions import SIGN, Quantity, arc_over_x, inverse_over_x, root
from .series import Series

__all__ = [
    "FunctionId", "AuxFunctionId", "AuxSpec", "BoundSpec", "InequalityDisplay",
    "envelope", "builtin_specs", "aux", "aux_catalogue", "gap_function_for",
    "SMALL_X_GUARD",
]

SMALL_X_GUARD = 1e-3
QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)
_INDEX = {"arcsl": 1, "arcslh": 2, "arctl": 3, "arctlh": 4}
_TARGET = {v: k for k, v in _INDEX.items()}


class FunctionId(str, enum.Enum):
    ARCSL = "arcsl"
    ARCSLH = "arcslh"
    ARCTL = "arctl"
    ARCTLH = "arctlh"
    SL = "sl"
    SLH = "slh"
    TL = "tl"
    TLH = "tlh"


@dataclass(frozen=True)
class AuxFunctionId:
    family: str   # ratio_f | weighted_f | gap_g | gap_h | product
    index: int

    FAMILIES = ("ratio_f", "weighted_f", "gap_g", "gap_h", "product")
    _PREFIX = {"ratio_f": "f", "weighted_f": "fw", "gap_g": "g", "gap_h": "h"}

    def __post_init__(self):
        top = 2 if self.family == "product" else 4
        if self.family not in self.FAMILIES or not 1 <= self.index <= top:
            raise ValueError(f"no auxiliary function {self.family}[{self.index}]")

    @property
    def name(self) -> str:
        if self.family == "product":
            return ("sl_slh_over_x2", "tl_tlh_over_x2")[self.index - 1]
        return f"{self._PREFIX[self.family]}{self.index}"

    @classmethod
    def parse(cls, name: str) -> "AuxFunctionId":
        for fid in all_aux_ids():
            if fid.name == name:
                return fid
        raise KeyError(name)


def all_aux_ids() -> list[AuxFunctionId]:
    ids = [AuxFunctionId(f, i) for f in AuxFunctionId.FAMILIES[:4] for i in range(1, 5)]
    return ids + [AuxFunctionId("product", 1), AuxFunctionId("product", 2)]


# ---------------------------------------------------------------- envelopes

def _root_value(sign, q, x):
    base = arc._one_minus_x4(abs(x)) if sign < 0 else 1.0 + x**4
    return base ** float(q)


@dataclass(frozen=True)
class BoundSpec:
    target: str
    side: str                 # lower | upper
    root_kind: str            # quarter | half
    numerator: float | Fraction
    denom_const: float | Fraction
    denom_coeff: float | Fraction
    label: str = ""

    @property
    def sign(self) -> int:
        return SIGN[self.target]

    @property
    def exponent(self) -> Fraction:
        return QUARTER if self.root_kind == "quarter" else HALF

    @property
    def domain(self) -> tuple[float, float]:
        return (-1.0, 1.0) if self.sign < 0 else (-math.inf, math.inf)

    @property
    def gap_constant(self) -> float:
        """The value of the matching gap function that makes this side sharp."""
        return float(Fraction(self.denom_const) / Fraction(self.denom_coeff)) \
            if isinstance(self.denom_const, Fraction) and isinstance(self.denom_coeff, Fraction) \
            else float(self.denom_const) / float(self.denom_coeff)

    @property
    def gap_id(self) -> AuxFunctionId:
        return AuxFunctionId("gap_g" if self.root_kind == "quarter" else "gap_h", _INDEX[self.target])

    @property
    def gap_extremum(self) -> str:
        """'sup' or 'inf': which grid extremum of the gap function to compare.

        ``F/x = (1 + lam)/(lam + r)`` decreases in ``lam`` when ``r < 1`` and
        increases when ``r > 1``.
        """
        lower = self.side == "lower"
        return "sup" if lower == (self.sign < 0) else "inf"

    def series(self) -> Series:
        # 1 + dk (1 - r) / (dc + dk r): equal to the envelope because
        # numerator = dc + dk, with a constant term that is exactly 1
        r = root(self.sign, self.exponent)
        return 1 + self.denom_coeff * (1 - r) / (self.denom_coeff * r + self.denom_const)

    def quantity(self) -> Quantity:
        return Quantity(lambda x: envelope(self, x), self.series(), 0, self.label)


@dataclass(frozen=True)
class InequalityDisplay:
    label: str
    target: str
    lower: BoundSpec
    upper: BoundSpec | None = None

    @property
    def sides(self) -> list[BoundSpec]:
        return [s for s in (self.lower, self.upper) if s is not None]


def envelope(spec: BoundSpec, x: float) -> float:
    """Evaluate one envelope; defined on the closure of ``spec.domain``."""
    lo, hi = spec.domain
    if not (lo <= x <= hi) or math.isnan(x):
        raise DomainError(f"{spec.label}: x={x!r} outside [{lo}, {hi}]")
    ax = abs(x)
    num, dc, dk = float(spec.numerator), float(spec.denom_const), float(spec.denom_coeff)
    if spec.sign > 0 and ax > 1.0:
        # r = x**(4q) * (1 + x**-4)**q, kept finite for huge x
        r = ax ** (4 * float(spec.exponent)) * (1.0 + ax**-4.0) ** float(spec.exponent)
    else:
        r = _root_value(spec.sign, spec.exponent, ax)
    return num / (dc + dk * r)


def builtin_specs(omega_value: float | None = None) -> list[InequalityDisplay]:
    """The eight Shafer-Fink type bounds, four with quarter roots and four
    with square roots; two of the latter have no upper side.

    ``omega_value`` overrides the lemniscate constant used in the
    constants (not in the function evaluators); it exists to show that
    the checks are sensitive to it.
    """
    w = omega() if omega_value is None else float(omega_value)
    w2 = math.sqrt(2.0) * w if omega_value is not None else k_const()
    F = Fraction

    def b(target, side, kind, n, c, k):
        return BoundSpec(target, side, kind, n, c, k, f"{target}-{kind}-{side}")

    def d(target, kind, lower, upper=None):
        return InequalityDisplay(f"{target}-{kind}", target, lower, upper)

    return [
        d("arcsl", "quarter", b("arcsl", "lower", "quarter", w, F(1), w - 1),
          b("arcsl", "upper", "quarter", F(5), F(3), F(2))),
        d("arcslh", "quarter", b("arcslh", "lower", "quarter", w2, w2 - 1, F(1)),
          b("arcslh", "upper", "quarter", F(5), F(3), F(2))),
        d("arctl", "quarter", b("arctl", "lower", "quarter", w, w - 1, F(1)),
          b("arctl", "upper", "quarter", F(5), F(2), F(3))),
        d("arctlh", "quarter", b("arctlh", "lower", "quarter", w2, F(1), w2 - 1),
          b("arctlh", "upper", "quarter", F(5), F(2), F(3))),
        d("arcsl", "half", b("arcsl", "lower", "half", F(5), F(4), F(1)),
          b("arcsl", "upper", "half", w, F(1), w - 1)),
        d("arcslh", "half", b("arcslh", "lower", "half", F(5), F(4), F(1))),
        d("arctl", "half", b("arctl", "lower", "half", F(10), F(7), F(3))),
        d("arctlh", "half", b("arctlh", "lower", "half", F(10), F(7), F(3)),
          b("arctlh", "upper", "half", w2, F(1), w2 - 1)),
    ]


# ---------------------------------------------------------------- auxiliary functions

def _one_minus_root(sign, q, x):
    if sign < 0:
        base = arc._one_minus_x4(x)
        r = base ** float(q)
        if r < 0.5:
            return r, 1.0 - r
        return r, -math.expm1(float(q) * (math.log1p(-x**4) if x < 0.5 else math.log(base)))
    r = (1.0 + x**4) ** float(q)
    return r, -math.expm1(float(q) * math.log1p(x**4))


def _gap_value(target, q, x):
    e = arc.ratio_excess(target, x)
    r, one_minus_r = _one_minus_root(SIGN[target], q, x)
    # (1 - r) - r*e == 1 - r*(1 + e); use whichever has the smaller operands
    weighted = r * (1.0 + e)
    if max(abs(one_minus_r), abs(r * e)) > max(1.0, abs(weighted)):
        weighted = r * _ratio_value(target, x)
        return (1.0 - weighted) / e
    return (one_minus_r - r * e) / e


def _gap_series(target, q) -> Series:
    e = arc_over_x(target) - 1
    r = root(SIGN[target], q)
    return ((1 - r).shift() - r * e.shift()) / e.shift()


def _ratio_value(target, x):
    return arc.ARC_FUNCTIONS[target](x).value / x


def _weighted_value(target, x):
    q = QUARTER if target in ("arctl", "arctlh") else HALF
    r, _ = _one_minus_root(SIGN[target], q, x)
    return r * _ratio_value(target, x)


def _weighted_series(target):
    q = QUARTER if target in ("arctl", "arctlh") else HALF
    return root(SIGN[target], q) * arc_over_x(target)


def _product_f(x):
    return inverse.sl(x) * inverse.slh(x) / (x * x)


def _product_h(x):
    return inverse.tl(x) * inverse.tlh(x) / (x * x)


def _product_series(index) -> Series:
    s, t = inverse_over_x("sl"), inverse_over_x("slh")
    if index == 1:
        return s * t
    s4, t4 = s * s * s * s, t * t * t * t
    tl = s * (1 - s4.times_u()).power(-QUARTER)
    tlh = t * (1 + t4.times_u()).power(-QUARTER)
    return tl * tlh


@dataclass(frozen=True)
class AuxSpec:
    id: AuxFunctionId
    value: Callable[[float], float]
    series: Series
    domain: tuple[float, float]
    direction: str | None              # increasing | decreasing | None
    range: tuple[float, float]
    small_end: float                    # limit at 0+
    far_end: float                      # limit at the right end of the domain

    @property
    def name(self) -> str:
        return self.id.name

    def quantity(self) -> Quantity:
        return Quantity(lambda x: aux(self.id, x), self.series, 0, self.name)


def aux_catalogue(omega_value: float | None = None) -> dict[str, AuxSpec]:
    """Every auxiliary function with its claimed monotonicity and range."""
    w = omega() if omega_value is None else float(omega_value)
    w2 = math.sqrt(2.0) * w if omega_value is not None else k_const()
    inf = math.inf
    unit, half_line = (0.0, 1.0), (0.0, inf)
    dom = {1: unit, 2: half_line, 3: half_line, 4: unit}
    table = {
        # family: index -> (direction, range, limit at 0+, limit at far end)
        "ratio_f": {1: ("increasing", (1.0, w), 1.0, w),
                    2: ("decreasing", (0.0, 1.0), 1.0, 0.0),
                    3: ("decreasing", (0.0, 1.0), 1.0, 0.0),
                    4: ("increasing", (1.0, w2), 1.0, w2)},
        "weighted_f": {1: ("decreasing", (0.0, 1.0), 1.0, 0.0),
                       2: ("increasing", (1.0, inf), 1.0, inf),
                       3: ("increasing", (1.0, w), 1.0, w),
                       4: ("decreasing", (0.0, 1.0), 1.0, 0.0)},
        "gap_g": {1: ("increasing", (1.5, 1 / (w - 1)), 1.5, 1 / (w - 1)),
                  2: ("decreasing", (w2 - 1, 1.5), 1.5, w2 - 1),
                  3: ("decreasing", (w - 1, 2 / 3), 2 / 3, w - 1),
                  4: ("increasing", (2 / 3, 1 / (w2 - 1)), 2 / 3, 1 / (w2 - 1))},
        "gap_h": {1: ("decreasing", (1 / (w - 1), 4.0), 4.0, 1 / (w - 1)),
                  2: ("increasing", (4.0, inf), 4.0, inf),
                  3: ("increasing", (7 / 3, inf), 7 / 3, inf),
                  4: ("decreasing", (1 / (w2 - 1), 7 / 3), 7 / 3, 1 / (w2 - 1))},
    }
    out = {}
    for family, rows in table.items():
        for i, (direction, rng, small, far) in rows.items():
            fid = AuxFunctionId(family, i)
            out[fid.name] = AuxSpec(fid, partial(aux, fid), _series_for(fid), dom[i],
                                    direction, rng, small, far)
    wk = omega() if omega_value is None else w
    f_id, h_id = AuxFunctionId("product", 1), AuxFunctionId("product", 2)
    out[f_id.name] = AuxSpec(f_id, partial(aux, f_id), _series_for(f_id), (0.0, wk),
                             "increasing", (1.0, inf), 1.0, math.nan)
    out[h_id.name] = AuxSpec(h_id, partial(aux, h_id), _series_for(h_id), (0.0, wk),
                             None, (1.0, inf), 1.0, inf)
    return out


def aux(id: AuxFunctionId | str, x: float) -> float:
    """Evaluate an auxiliary function at ``x > 0``.

    Below ``SMALL_X_GUARD`` the truncated Maclaurin series is used; it
    agrees with the closed form there to full precision and avoids the
    0/0 form at the origin.
    """
    if isinstance(id, str):
        id = AuxFunctionId.parse(id)
    if id.family == "product":
        hi = omega()
        if not 0 < x < hi:
            raise DomainError(f"{id.name}: x must lie in (0, omega), got {x!r}")
        if x < SMALL_X_GUARD:
            return _series_for(id)(x**4)
        return (_product_f if id.index == 1 else _product_h)(x)
    target = _TARGET[id.index]
    hi = 1.0 if id.index in (1, 4) else math.inf
    if not 0 < x < hi:
        raise DomainError(f"{id.name}: x must lie in (0, {hi}), got {x!r}")
    if x < SMALL_X_GUARD:
        return _series_for(id)(x**4)
    if id.family == "ratio_f":
        return _ratio_value(target, x)
    if id.family == "weighted_f":
        return _weighted_value(target, x)
    return _gap_value(target, QUARTER if id.family == "gap_g" else HALF, x)


_SERIES_CACHE: dict[AuxFunctionId, Series] = {}


def _series_for(id: AuxFunctionId) -> Series:
    if id not in _SERIES_CACHE:
        target = _TARGET.get(id.index)
        if id.family == "product":
            s = _product_series(id.index)
        elif id.family == "ratio_f":
            s = arc_over_x(target)
        elif id.family == "weighted_f":
            s = _weighted_series(target)
        else:
            s = _gap_series(target, QUARTER if id.family == "gap_g" else HALF)
        _SERIES_CACHE[id] = s
    return _SERIES_CACHE[id]


def gap_function_for(spec: BoundSpec) -> Callable[[float], float]:
    gid = spec.gap_id
    return lambda x: aux(gid, x)
