"""Grid-based certification of the inequalities, monotonicity and range
claims, and sharp constants.

Every check returns a :class:`CheckReport` whose ``worst_margin`` is signed:
positive slack (or step, or distance to the range boundary) means the claim
held at every grid point.  Checks never raise on evaluation failures; they
report them.

Close to ``x = 0`` the quantities compared here agree to ``O(x**4)`` or
better and binary64 returns ties.  When a point fails below
``SERIES_LIMIT`` and both sides are :class:`~lemniscate.expansions.Quantity`
objects carrying an expansion, the point is re-tested with the expansion,
which resolves the sign of the difference exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import arc, bounds, inverse
from .constants import k_const, omega
from .errors import LemniscateError, NotFoundError
from .expansions import SERIES_LIMIT, Quantity, arc_over_x, inverse_over_x
from .quadrature import integrate
from .series import Series

__all__ = [
    "GridSpec", "CheckReport",
    "check_inequality", "check_monotone", "check_range", "check_close",
    "sharpness_probe", "sharpness_tolerance", "find_crossing", "crossing_report", "battery", "select", "run_all", "SUITES",
]

DEFAULT_POINTS = 10_000
DEFAULT_MARGIN = 1e-6
SMALL_END_TOL = 1e-6
FAR_END_TOL = 1e-3
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class GridSpec:
    """Abscissas strictly inside ``domain``.

    ``map`` is ``linear``; ``rational`` (``x = lo + t/(1-t)`` with ``t`` linear
    on ``(0, 1)``, for half-lines); or ``geometric`` (distances to the
    endpoints log-spaced from ``endpoint_margin``, for probing limits).
    """

    domain: tuple[float, float]
    points: int = DEFAULT_POINTS
    map: str = "linear"
    endpoint_margin: float = DEFAULT_MARGIN

    def abscissas(self) -> np.ndarray:
        lo, hi = self.domain
        n, m = self.points, self.endpoint_margin
        if n < 2 or not m > 0:
            raise ValueError("need points >= 2 and a positive margin")
        if self.map == "linear":
            if not math.isfinite(hi):
                raise ValueError("linear grids need a bounded domain")
            x = np.linspace(lo + m, hi - m, n)
        elif self.map == "rational":
            if math.isinf(lo):
                t = np.linspace(-1.0 + m, 1.0 - m, n)
                x = t / (1.0 - np.abs(t))
            else:
                t = np.linspace(m, 1.0 - m, n)
                x = lo + t / (1.0 - t)
        elif self.map == "geometric":
            if math.isfinite(hi):
                half = 0.5 * (hi - lo)
                d = np.geomspace(m, half, n // 2 + 1)
                x = np.concatenate([lo + d, hi - d[::-1]])
            else:
                x = lo + np.geomspace(m, 1.0 / m, n)
        else:
            raise ValueError(f"unknown grid map {self.map!r}")
        x = np.unique(x)
        return x[(x > lo) & (x < hi)]


@dataclass
class CheckReport:
    check_name: str
    verdict: str
    points_tested: int
    worst_margin: float
    worst_location: float
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        return {
            "check_name": self.check_name, "verdict": self.verdict,
            "points_tested": self.points_tested, "worst_margin": self.worst_margin,
            "worst_location": self.worst_location, "notes": self.notes,
        }


def _report(name, margins, xs, notes=""):
    margins = np.asarray(margins, dtype=float)
    if margins.size == 0:
        return CheckReport(name, "fail", 0, math.nan, math.nan, (notes + " no points").strip())
    bad = np.isnan(margins)
    if bad.any():
        i = int(np.argmax(bad))
        return CheckReport(name, "fail", int(margins.size), -math.inf, float(xs[i]),
                           (notes + " evaluation failed").strip())
    i = int(np.argmin(margins))
    worst = float(margins[i])
    return CheckReport(name, "pass" if worst > 0 else "fail", int(margins.size),
                       worst, float(xs[i]), notes)


def _safe(f, x):
    try:
        v = float(f(x))
    except (LemniscateError, ArithmeticError, ValueError) as exc:
        _safe.last_error = f"{type(exc).__name__}: {exc}"
        return math.nan
    return v


_safe.last_error = ""


def _diff_series(lhs, rhs):
    if isinstance(lhs, Quantity) and isinstance(rhs, Quantity) \
            and lhs.series is not None and rhs.series is not None and lhs.power == rhs.power:
        return rhs.series - lhs.series, lhs.power
    return None, 0


def check_inequality(lhs: Callable, rhs: Callable, grid: GridSpec,
                     strict_margin: float = 0.0, name: str = "inequality") -> CheckReport:
    """Certify ``lhs(x) + strict_margin < rhs(x)`` on every grid point."""
    xs = grid.abscissas()
    diff, power = _diff_series(lhs, rhs)
    margins = np.empty(xs.size)
    retested = 0
    for i, x in enumerate(xs):
        slack = _safe(rhs, x) - _safe(lhs, x)
        if not slack > strict_margin and diff is not None and 0 < abs(x) < SERIES_LIMIT \
                and not math.isnan(slack):
            slack = x**power * diff(x**4)
            retested += 1
        margins[i] = slack - strict_margin
    notes = f"{retested} point(s) re-tested by expansion" if retested else ""
    return _report(name, margins, xs, notes)


def check_monotone(f: Callable, grid: GridSpec, direction: str,
                   name: str = "monotone") -> CheckReport:
    """Certify strict monotonicity over consecutive grid points."""
    sign = {"increasing": 1.0, "decreasing": -1.0}[direction]
    xs = grid.abscissas()
    vals = np.array([_safe(f, x) for x in xs])
    steps = sign * np.diff(vals)
    series = f.series if isinstance(f, Quantity) and f.power == 0 else None
    retested = 0
    if series is not None:
        for i in np.flatnonzero(~(steps > 0)):
            if xs[i + 1] < SERIES_LIMIT and not np.isnan(steps[i]):
                steps[i] = sign * series.step(xs[i] ** 4, xs[i + 1] ** 4)
                retested += 1
    notes = f"{retested} step(s) re-tested by expansion" if retested else ""
    return _report(name, steps, xs[:-1], notes)


def check_range(f: Callable, grid: GridSpec, lo: float, hi: float,
                name: str = "range") -> CheckReport:
    """Certify ``lo < f(x) < hi`` on every grid point."""
    xs = grid.abscissas()
    vals = np.array([_safe(f, x) for x in xs])
    margins = np.minimum(vals - lo, hi - vals)
    series = f.series if isinstance(f, Quantity) and f.power == 0 else None
    retested = 0
    if series is not None:
        c0 = float(series.c[0])
        for i in np.flatnonzero(~(margins > 0)):
            x = xs[i]
            if x < SERIES_LIMIT and not np.isnan(margins[i]):
                t = series.tail(x**4)
                margins[i] = min((c0 - lo) + t, (hi - c0) - t)
                retested += 1
    notes = f"f({xs[0]:.3g})={vals[0]:.15g}, f({xs[-1]:.6g})={vals[-1]:.15g}"
    if retested:
        notes += f"; {retested} point(s) re-tested by expansion"
    return _report(name, margins, xs, notes)


def check_close(name, pairs: Iterable[tuple[float, float, float]], tol: float,
                relative: bool = False) -> CheckReport:
    """Certify ``|got - want| <= tol`` for ``(x, got, want)`` triples."""
    xs, margins = [], []
    for x, got, want in pairs:
        err = abs(got - want)
        if relative:
            err /= abs(want)
        xs.append(x)
        margins.append(tol - err if not math.isnan(err) else math.nan)
    # equality with the tolerance counts as a pass for closeness checks
    rep = _report(name, margins, np.array(xs), f"tol={tol:g}")
    if rep.worst_margin == 0:
        rep.verdict = "pass"
        rep.worst_margin = _EPS * tol
    return rep


# ---------------------------------------------------------------- sharpness

def _gap_spec(spec: bounds.BoundSpec, omega_value=None) -> bounds.AuxSpec:
    return bounds.aux_catalogue(omega_value)[spec.gap_id.name]


def sharpness_end(spec: bounds.BoundSpec) -> str:
    """'small' if the constant is approached as ``x -> 0+``, else 'far'."""
    gap = _gap_spec(spec)
    small = abs(spec.gap_constant - gap.small_end)
    far = abs(spec.gap_constant - gap.far_end)
    return "small" if small <= far else "far"


def sharpness_tolerance(spec: bounds.BoundSpec) -> float:
    return SMALL_END_TOL if sharpness_end(spec) == "small" else FAR_END_TOL


def probe_grid(spec: bounds.BoundSpec, points: int = 2000) -> GridSpec:
    """Geometric grid reaching the last binary64 values before the ends."""
    if spec.sign < 0:
        return GridSpec((0.0, 1.0), points, "geometric", 1.1102230246251565e-16)
    return GridSpec((0.0, math.inf), points, "geometric", 1e-12)


def sharpness_probe(spec: bounds.BoundSpec, grid: GridSpec | None = None) -> float:
    """Grid extremum of the gap function whose range endpoint is the
    constant of ``spec``; compare the result with ``spec.gap_constant``."""
    grid = grid or probe_grid(spec)
    f = bounds.gap_function_for(spec)
    vals = np.array([_safe(f, x) for x in grid.abscissas()])
    vals = vals[~np.isnan(vals)]
    return float(vals.max() if spec.gap_extremum == "sup" else vals.min())


# ---------------------------------------------------------------- crossings

def find_crossing(f: Callable, g: Callable, domain: tuple[float, float],
                  scan_points: int = DEFAULT_POINTS, tol: float = 1e-12) -> float:
    """Abscissa where ``f - g`` changes sign, by scan then bisection.

    Differences within a few ulp of zero are treated as undecided so that
    rounding ties near a tangency are not mistaken for crossings.  The
    bracket is bisected until it is narrower than ``tol``.
    """
    xs = GridSpec(domain, scan_points, "linear", DEFAULT_MARGIN).abscissas()

    def d(x):
        a, b = float(f(x)), float(g(x))
        return a - b, 8 * _EPS * max(abs(a), abs(b), 1e-300)

    prev_x, prev_s = None, 0
    for x in xs:
        v, noise = d(x)
        if abs(v) <= noise:
            continue
        s = 1 if v > 0 else -1
        if prev_s and s != prev_s:
            lo, hi = prev_x, x
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                vm, _ = d(mid)
                if vm == 0 or hi - lo <= max(tol, 2 * math.ulp(hi)):
                    return mid
                if (vm > 0) == (prev_s > 0):
                    lo = mid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        prev_x, prev_s = x, s
    raise NotFoundError("no sign change of f - g on the scan grid")


# ---------------------------------------------------------------- the battery

def _arc_q(name):
    f = arc.ARC_FUNCTIONS[name]
    return Quantity(lambda x: f(x).value, arc_over_x(name), 1, name)


def _ratio_q(name):
    f = arc.ARC_FUNCTIONS[name]
    return Quantity(lambda x: f(x).value / x, arc_over_x(name), 0, f"{name}(x)/x")


def _inv_q(name):
    f = inverse.INVERSE_FUNCTIONS[name]
    return Quantity(f, inverse_over_x(name), 1, name)


def _inv_ratio_q(name, flip=False):
    f = inverse.INVERSE_FUNCTIONS[name]
    s = inverse_over_x(name)
    if flip:
        return Quantity(lambda x: x / f(x), s.reciprocal(), 0, f"x/{name}(x)")
    return Quantity(lambda x: f(x) / x, s, 0, f"{name}(x)/x")


_X = Quantity(lambda x: x, Series.const(1), 1, "x")
_ONE = Quantity(lambda x: 1.0, Series.const(1), 0, "1")


def _fd(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2 * h)


_HALF_LINE = (0.0, math.inf)


def _grid(domain, points):
    if math.isinf(domain[1]):
        return GridSpec(domain, points, "rational", DEFAULT_MARGIN)
    return GridSpec(domain, points, "linear", DEFAULT_MARGIN)


def _derivative_checks():
    w, kk = omega(), k_const()
    ev = lambda name: (lambda x: arc.ARC_FUNCTIONS[name](x).value)
    table = [
        ("arcsl", ev("arcsl"), arc.d_arcsl, 1.0),
        ("arcslh", ev("arcslh"), arc.d_arcslh, 4.0),
        ("arctl", ev("arctl"), arc.d_arctl, 4.0),
        ("arctlh", ev("arctlh"), arc.d_arctlh, 1.0),
        ("sl", inverse.sl, inverse.d_sl, w),
        ("slh", inverse.slh, inverse.d_slh, kk),
        ("tl", inverse.tl, inverse.d_tl, w),
        ("tlh", inverse.tlh, inverse.d_tlh, kk),
        ("sqrt(1-sl^4)", inverse.sqrt_one_minus_sl4, inverse.d_sqrt_one_minus_sl4, w),
        ("sqrt(1+slh^4)", inverse.sqrt_one_plus_slh4, inverse.d_sqrt_one_plus_slh4, kk),
    ]
    for name, f, df, b in table:
        xs = np.linspace(0.1 * b, 0.95 * b, 100)
        yield f"derivative/{name}", (lambda f=f, df=df, xs=xs, name=name: check_close(
            f"derivative/{name}", ((x, _fd(f, x), df(x)) for x in xs), 1e-6, relative=True))


def _roundtrip_checks(points):
    w, kk = omega(), k_const()
    pairs = [("arcsl", "sl", (-1.0, 1.0), (-w, w)),
             ("arcslh", "slh", (-math.inf, math.inf), (-kk, kk)),
             ("arctl", "tl", (-math.inf, math.inf), (-w, w)),
             ("arctlh", "tlh", (-1.0, 1.0), (-kk, kk))]
    for a, f, arc_dom, inv_dom in pairs:
        A, F = arc.ARC_FUNCTIONS[a], inverse.INVERSE_FUNCTIONS[f]

        def fwd(A=A, F=F, dom=inv_dom, name=f"roundtrip/{a}({f}(x))"):
            xs = _grid(dom, points).abscissas()
            return check_close(name, ((x, _safe(lambda t: A(F(t)).value, x), x) for x in xs), 1e-12)

        def back(A=A, F=F, dom=arc_dom, name=f"roundtrip/{f}({a}(y))"):
            xs = _grid(dom, points).abscissas()
            return check_close(name, ((y, _safe(lambda t: F(A(t).value), y), y) for y in xs), 1e-12)

        yield f"roundtrip/{a}({f}(x))", fwd
        yield f"roundtrip/{f}({a}(y))", back


def _oracle_checks():
    rng = np.random.default_rng(20190501)

    def quad(integrand, x):
        v = integrate(integrand, 0.0, abs(x), 1e-15).value if x else 0.0
        return math.copysign(v, x)

    xs = rng.uniform(-1.0, 1.0, 50)
    ys = rng.uniform(-10.0, 10.0, 50)
    sl_int = lambda t: 1.0 / math.sqrt(1.0 - t**4)
    slh_int = lambda t: 1.0 / math.sqrt(1.0 + t**4)
    yield "oracle/arcsl", lambda: check_close(
        "oracle/arcsl", ((x, arc.arcsl(x).value, quad(sl_int, x)) for x in xs), 1e-12)
    yield "oracle/arcslh", lambda: check_close(
        "oracle/arcslh", ((y, arc.arcslh(y).value, quad(slh_int, y)) for y in ys), 1e-12)


def _constant_checks():
    def omega_check():
        q = integrate(lambda t, da, db: 1.0 / math.sqrt(db * (1 + t) * (1 + t * t)),
                      0.0, 1.0, 1e-15, distances=True).value
        return check_close("constants/omega-vs-quadrature", [(1.0, omega(), q)], 1e-12)

    def k_check():
        q = 2.0 * integrate(lambda t: 1.0 / math.sqrt(1.0 + t**4), 0.0, 1.0, 1e-15).value
        return check_close("constants/K-vs-quadrature", [(math.inf, k_const(), q)], 1e-12)

    yield "constants/omega-vs-quadrature", omega_check
    yield "constants/K-vs-quadrature", k_check


def _bound_checks(omega_value, points):
    for disp in bounds.builtin_specs(omega_value):
        suite = "theorem-1.4" if disp.lower.root_kind == "quarter" else "theorem-1.9"
        dom = (0.0, 1.0) if disp.lower.sign < 0 else _HALF_LINE
        ratio = _ratio_q(disp.target)
        for spec in disp.sides:
            env = spec.quantity()
            name = f"{suite}/({spec.label})"
            lhs, rhs = (env, ratio) if spec.side == "lower" else (ratio, env)
            yield name, (lambda lhs=lhs, rhs=rhs, dom=dom, name=name:
                         check_inequality(lhs, rhs, _grid(dom, points), 0.0, name))


def _sharpness_checks(omega_value):
    for disp in bounds.builtin_specs(omega_value):
        for spec in disp.sides:
            name = f"sharpness/({spec.label})"

            def run(spec=spec, name=name):
                # the probe evaluates the true gap function; the constant
                # comes from the (possibly overridden) spec
                got = sharpness_probe(spec)
                tol = sharpness_tolerance(spec)
                rep = check_close(name, [(0.0, got, spec.gap_constant)], tol)
                rep.notes = f"{spec.gap_extremum} {spec.gap_id.name} = {got:.15g}, " \
                            f"constant {spec.gap_constant:.15g}, tol {tol:g}"
                return rep

            yield name, run


_AUX_SUITE = {"ratio_f": "ratio", "gap_g": "gap-g", "weighted_f": "weighted", "gap_h": "gap-h"}


def _aux_checks(omega_value, points):
    for name, spec in bounds.aux_catalogue(omega_value).items():
        if spec.id.family not in _AUX_SUITE:
            continue
        suite = _AUX_SUITE[spec.id.family]
        q = spec.quantity()
        grid = _grid(spec.domain, points)
        yield f"{suite}/{name}-monotone", (lambda q=q, g=grid, d=spec.direction, n=f"{suite}/{name}-monotone":
                                          check_monotone(q, g, d, n))
        yield f"{suite}/{name}-range", (lambda q=q, g=grid, r=spec.range, n=f"{suite}/{name}-range":
                                       check_range(q, g, r[0], r[1], n))


def _ordering_checks(points):
    w = omega()
    sl, slh, tl, tlh = (_inv_q(n) for n in ("sl", "slh", "tl", "tlh"))
    om = (0.0, w)
    sine_chain = [("tlh<sl", tlh, sl), ("sl<x", sl, _X), ("x<slh", _X, slh), ("slh<tl", slh, tl)]
    x_tl, tlh_x = _inv_ratio_q("tl", flip=True), _inv_ratio_q("tlh")
    x_slh, sl_x = _inv_ratio_q("slh", flip=True), _inv_ratio_q("sl")
    ratio_chain = [("x/tl<tlh/x", x_tl, tlh_x), ("x/tl<x/slh", x_tl, x_slh),
               ("tlh/x<sl/x", tlh_x, sl_x), ("x/slh<sl/x", x_slh, sl_x)]
    for label, lhs, rhs in sine_chain:
        yield f"inverse-chain/{label}", lambda lhs=lhs, rhs=rhs, n=f"inverse-chain/{label}": \
            check_inequality(lhs, rhs, _grid(om, points), 0.0, n)
    for label, lhs, rhs in ratio_chain:
        yield f"inverse-chain/{label}", lambda lhs=lhs, rhs=rhs, n=f"inverse-chain/{label}": \
            check_inequality(lhs, rhs, _grid(om, points), 0.0, n)

    arctl, arcslh, arcsl, arctlh = (_arc_q(n) for n in ("arctl", "arcslh", "arcsl", "arctlh"))
    arc_chain = [("arctl<arcslh", arctl, arcslh), ("arcslh<x", arcslh, _X),
               ("x<arcsl", _X, arcsl), ("arcsl<arctlh", arcsl, arctlh)]
    for label, lhs, rhs in arc_chain:
        yield f"arc-chain/{label}", lambda lhs=lhs, rhs=rhs, n=f"arc-chain/{label}": \
            check_inequality(lhs, rhs, _grid((0.0, 1.0), points), 0.0, n)
    yield "arc-chain/arctl<arcslh-on-half-line", lambda: check_inequality(
        arctl, arcslh, _grid(_HALF_LINE, points), 0.0, "arc-chain/arctl<arcslh-on-half-line")

    s_sl, s_slh = inverse_over_x("sl"), inverse_over_x("slh")
    prod_series = (1 + (s_slh * s_slh * s_slh * s_slh).times_u()) * (1 - (s_sl * s_sl * s_sl * s_sl).times_u())
    prod = Quantity(lambda x: (1 + inverse.slh(x) ** 4) * inverse.d_sl(x) ** 2, prod_series, 0,
                   "(1+slh^4)(1-sl^4)")
    cat = bounds.aux_catalogue()
    f_prod, h_prod = cat["sl_slh_over_x2"], cat["tl_tlh_over_x2"]
    products = [
        ("slh<tl", slh, tl), ("tlh<sl", tlh, sl),
        ("x/slh<sl/x", x_slh, sl_x), ("x/tl<tlh/x", x_tl, tlh_x),
        ("(1+slh^4)(1-sl^4)<1", prod, _ONE),
        ("sl*slh/x^2>1", _ONE, f_prod.quantity()),
        ("tl*tlh/x^2>1", _ONE, h_prod.quantity()),
    ]
    for label, lhs, rhs in products:
        yield f"products/{label}", lambda lhs=lhs, rhs=rhs, n=f"products/{label}": \
            check_inequality(lhs, rhs, _grid(om, points), 0.0, n)
    yield "products/sl*slh/x^2-increasing", lambda: check_monotone(
        f_prod.quantity(), _grid(om, points), "increasing", "products/sl*slh/x^2-increasing")
    yield "crossing/tlh(x)/x=x/slh(x)", lambda: crossing_report(points)


def crossing_functions():
    return (lambda x: inverse.tlh(x) / x), (lambda x: x / inverse.slh(x))


def crossing_report(points=DEFAULT_POINTS) -> CheckReport:
    """Locate where tlh(x)/x and x/slh(x) cross and confirm opposite signs
    at ``x* -+ 0.1``."""
    f, g = crossing_functions()
    name = "crossing/tlh(x)/x=x/slh(x)"
    try:
        xc = find_crossing(f, g, (0.0, omega()), points)
    except NotFoundError as exc:
        return CheckReport(name, "fail", points, -math.inf, math.nan, str(exc))
    left = f(xc - 0.1) - g(xc - 0.1)
    right = f(xc + 0.1) - g(xc + 0.1)
    margin = min(abs(left), abs(right)) if left * right < 0 else -min(abs(left), abs(right))
    return CheckReport(name, "pass" if margin > 0 else "fail", points, margin, xc,
                       f"x*={xc:.15g}; f-g at x*-0.1: {left:.3e}, at x*+0.1: {right:.3e}")


SUITES = ("constants", "oracle", "roundtrip", "derivative", "theorem-1.4", "theorem-1.9",
          "sharpness", "gap-g", "gap-h", "ratio", "weighted",
          "inverse-chain", "arc-chain", "products", "crossing")


def battery(omega_value: float | None = None, points: int = DEFAULT_POINTS,
            roundtrip_points: int = 1000):
    """Ordered ``(name, thunk)`` pairs for every check."""
    yield from _constant_checks()
    yield from _oracle_checks()
    yield from _roundtrip_checks(roundtrip_points)
    yield from _derivative_checks()
    yield from _bound_checks(omega_value, points)
    yield from _sharpness_checks(omega_value)
    yield from sorted(_aux_checks(omega_value, points), key=lambda item: item[0])
    yield from _ordering_checks(points)


def select(names: Iterable[str], pattern: str) -> list[str]:
    """Names matching a suite name, a full check name, or 'all'."""
    if pattern == "all":
        return list(names)
    return [n for n in names if n == pattern or n.split("/")[0] == pattern]


def run_all(omega_value: float | None = None, points: int = DEFAULT_POINTS,
            only: str = "all") -> list[CheckReport]:
    """Run the battery (or the part matching ``only``) in a fixed order."""
    checks = list(battery(omega_value, points))
    wanted = set(select([n for n, _ in checks], only))
    return [thunk() for name, thunk in checks if name in wanted]
