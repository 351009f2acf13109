import math

import numpy as np
import pytest

from lemniscate import NotFoundError, builtin_specs, omega, slh, tlh
from lemniscate.expansions import Quantity
from lemniscate.series import Series
from lemniscate.verifier import (
    SUITES, CheckReport, GridSpec, battery, check_close, check_inequality, check_monotone,
    check_range, crossing_report, find_crossing, select, sharpness_probe, sharpness_tolerance,
)

# root of tlh(x)/x = x/slh(x) from 30-digit arithmetic
CROSSING = 1.21341479627322006767


@pytest.mark.parametrize("grid", [
    GridSpec((0.0, 1.0), 100),
    GridSpec((0.0, math.inf), 100, "rational"),
    GridSpec((-math.inf, math.inf), 101, "rational"),
    GridSpec((0.0, 1.0), 100, "geometric", 1e-12),
    GridSpec((0.0, math.inf), 100, "geometric", 1e-12),
])
def test_grids_are_increasing_and_interior(grid):
    x = grid.abscissas()
    lo, hi = grid.domain
    assert np.all(np.diff(x) > 0)
    assert np.all(x > lo) and np.all(x < hi)


def test_grid_rejects_bad_input():
    with pytest.raises(ValueError):
        GridSpec((0.0, math.inf), 10).abscissas()
    with pytest.raises(ValueError):
        GridSpec((0.0, 1.0), 10, "spiral").abscissas()


def test_inequality_pass_and_fail():
    grid = GridSpec((0.0, 2.0), 200)
    ok = check_inequality(math.sin, lambda x: x, grid, name="sin<x")
    assert ok.passed and ok.points_tested == 200 and ok.worst_margin > 0
    bad = check_inequality(lambda x: x, lambda x: 1.0, grid, name="x<1")
    assert not bad.passed and bad.worst_location > 1.0


def test_expansion_resolves_ties_near_zero():
    # 1 - x^4/10 < 1 is lost in rounding for tiny x
    lhs = Quantity(lambda x: 1 - x**4 / 10, Series([1, -0.1]), 0)
    one = Quantity(lambda x: 1.0, Series.const(1), 0)
    grid = GridSpec((0.0, 1e-3), 50, "linear", 1e-6)
    plain = check_inequality(lambda x: 1 - x**4 / 10, lambda x: 1.0, grid)
    assert not plain.passed
    assert check_inequality(lhs, one, grid).passed


def test_monotone_and_range():
    grid = GridSpec((0.0, 3.0), 300)
    assert check_monotone(math.exp, grid, "increasing").passed
    assert not check_monotone(math.sin, grid, "increasing").passed
    assert check_range(math.atan, grid, 0.0, 1.5).passed
    assert not check_range(math.atan, grid, 0.0, 1.0).passed


def test_close_and_report_dict():
    rep = check_close("pairs", [(1.0, 2.0, 2.0 + 1e-13)], 1e-12)
    assert rep.passed
    d = rep.as_dict()
    assert d["check_name"] == "pairs" and d["verdict"] == "pass"
    assert not check_close("rel", [(1.0, 1.0, 1.1)], 1e-3, relative=True).passed
    assert isinstance(rep, CheckReport)


def test_find_crossing_simple_and_missing():
    assert find_crossing(math.cos, lambda x: x, (0.0, 1.0), 100) == pytest.approx(
        0.7390851332151607, abs=1e-12)
    with pytest.raises(NotFoundError):
        find_crossing(math.exp, lambda x: 0.0, (0.0, 1.0), 100)


def test_crossing_of_tangent_ratios():
    f = lambda x: tlh(x) / x
    g = lambda x: x / slh(x)
    x = find_crossing(f, g, (0.0, omega()), 2000)
    assert x == pytest.approx(CROSSING, abs=1e-12)
    assert crossing_report(2000).passed


def test_sharpness_probe_small_end():
    upper = builtin_specs()[0].upper      # constant 3/2 approached at 0+
    assert sharpness_tolerance(upper) == 1e-6
    assert sharpness_probe(upper) == pytest.approx(1.5, abs=1e-6)


def test_battery_names_and_selection():
    names = [n for n, _ in battery(points=100)]
    assert len(names) == len(set(names))
    assert {n.split("/")[0] for n in names} == set(SUITES)
    assert len(select(names, "theorem-1.4")) == 8
    assert len(select(names, "theorem-1.9")) == 6
    assert len(select(names, "sharpness")) == 14
    assert len(select(names, "gap-g")) == 8
    assert select(names, "no-such") == []
    assert select(names, "all") == names
