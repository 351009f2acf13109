import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lemniscate.expansions import arc_over_x, inverse_over_x, root
from lemniscate.series import ORDER, Series, central_binomial_over_4n

F = Fraction


def test_arcsl_coefficients_are_central_binomials_over_4n_plus_1():
    s = arc_over_x("arcsl")
    assert s.c[:4] == [central_binomial_over_4n(n) / (4 * n + 1) for n in range(4)]
    assert s.c[1] == F(1, 10)


@pytest.mark.parametrize("name,head", [
    ("sl", [F(1), F(-1, 10), F(1, 120), F(-11, 15600)]),
    ("slh", [F(1), F(1, 10), F(1, 120), F(11, 15600)]),
    ("tl", [F(1), F(3, 20), F(19, 480)]),
])
def test_reverted_series_heads(name, head):
    assert inverse_over_x(name).c[:len(head)] == head


def test_reversion_inverts_composition():
    a, s = arc_over_x("arctlh"), inverse_over_x("tlh")
    ident = s * a.compose((s * s * s * s).times_u())
    assert ident.c == Series.const(1).c


def test_binomial_power_and_reciprocal_agree():
    r = root(1, F(1, 2))
    assert (r * r).c == Series([F(1), F(1)]).c
    assert r.power(-2).c == (r * r).reciprocal().c
    assert (r / r).c == Series.const(1).c


def test_power_needs_unit_constant_term():
    with pytest.raises(ValueError):
        Series([F(2), F(1)]).power(F(1, 2))


def test_compose_needs_zero_constant_inner():
    with pytest.raises(ValueError):
        Series.u().compose(Series.const(1))


def test_truncation_order():
    assert len(Series([1] * (ORDER + 5)).c) == ORDER


small = st.floats(min_value=-0.3, max_value=0.3)


@given(small)
def test_sqrt_series_matches_math(x):
    u = x**4
    assert root(1, F(1, 2))(u) == pytest.approx(math.sqrt(1 + u), rel=1e-15)
    assert root(-1, F(-1, 4))(u) == pytest.approx((1 - u) ** -0.25, rel=1e-15)


@given(small, small)
def test_step_and_tail_are_consistent(x1, x2):
    s = arc_over_x("arcslh")
    u1, u2 = x1**4, x2**4
    assert s.step(u1, u2) == pytest.approx(s.tail(u2) - s.tail(u1), abs=1e-18)
    assert s(u1) == pytest.approx(1 + s.tail(u1), abs=2e-16)
