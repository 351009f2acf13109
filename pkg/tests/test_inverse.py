import math

import pytest
from hypothesis import given, strategies as st

from lemniscate import (
    DomainError, InversionConfig, arcsl, d_arcsl, d_arctlh, arcslh, arctl, arctlh, d_sl, d_slh, d_tl, d_tlh,
    k_const, omega, sl, slh, sqrt_one_minus_sl4, sqrt_one_plus_slh4, tl, tlh,
)
from lemniscate.inverse import d_sqrt_one_minus_sl4, d_sqrt_one_plus_slh4

# (x, f(x)) pairs from 40-digit quadrature, corrected for the rounding of x
PAIRS = {
    sl: [(0.2500978155548593, 0.25), (0.777587987239858, 0.75), (1.2107780888725295, 0.99)],
    slh: [(0.249902502338452, 0.25), (0.7289254314587309, 0.7500000000000001),
          (1.3571211140919177, 2.0000000000000004), (1.8340746776213719, 49.99999999999997)],
    tl: [(0.24985379309239727, 0.25), (0.7189808182078855, 0.75),
         (1.1879203238431773, 1.9999999999999996), (1.3108287771540599, 49.9999999999965)],
    tlh: [(0.25014676322148266, 0.24999999999999997), (0.7925010552855623, 0.75),
          (1.4058512323421117, 0.99)],
}


@pytest.mark.parametrize("f", list(PAIRS), ids=lambda f: f.__name__)
def test_reference_pairs(f):
    deriv = {sl: d_sl, slh: d_slh, tl: d_tl, tlh: d_tlh}[f]
    for x, y in PAIRS[f]:
        # one ulp of x moves the answer by slope * ulp
        slack = 2 * deriv(x) * math.ulp(x)
        assert f(x) == pytest.approx(y, rel=4e-15, abs=slack), x


def test_special_points():
    assert sl(0.0) == 0.0
    assert slh(k_const() / 2) == pytest.approx(1.0, abs=2e-16)
    assert sl(omega() - 1e-12) == pytest.approx(1.0, abs=1e-15)
    assert tlh(k_const() - 1e-10) == pytest.approx(1.0, abs=1e-15)


def test_closed_endpoints():
    assert sl(omega(), closed=True) == 1.0
    assert tlh(-k_const(), closed=True) == -1.0
    with pytest.raises(DomainError):
        sl(omega())
    with pytest.raises(DomainError):
        tlh(k_const())


@pytest.mark.parametrize("f,bad", [(sl, 1.4), (tl, -1.32), (slh, 1.86), (tlh, math.nan),
                                   (slh, math.inf)])
def test_domain_errors(f, bad):
    with pytest.raises(DomainError):
        f(bad)


def test_slh_reflection():
    # slh(x) * slh(K - x) = 1
    for x in (0.2, 0.6, 0.9):
        assert slh(x) * slh(k_const() - x) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("kw", [{"tol": 1e-16}, {"max_newton_steps": 2},
                                {"max_bisection_steps": 10}])
def test_config_invariants(kw):
    with pytest.raises(ValueError):
        InversionConfig(**kw)


def test_looser_tolerance_still_accurate():
    cfg = InversionConfig(tol=1e-10)
    assert sl(0.5, cfg) == pytest.approx(sl(0.5), abs=1e-10)


def test_derivative_identities():
    for x in (0.3, 0.9, 1.2):
        assert d_sl(x) == pytest.approx(math.sqrt(1 - sl(x) ** 4), rel=1e-13)
        assert d_slh(x) == pytest.approx(math.sqrt(1 + slh(x) ** 4), rel=1e-13)
        assert d_tl(x) == pytest.approx((1 + tl(x) ** 4) ** 0.75, rel=1e-13)
        assert d_tlh(x) == pytest.approx((1 - tlh(x) ** 4) ** 0.75, rel=1e-13)
        assert sqrt_one_minus_sl4(x) == d_sl(x)
        assert sqrt_one_plus_slh4(x) == d_slh(x)
        assert d_sqrt_one_minus_sl4(x) == pytest.approx(-2 * sl(x) ** 3, rel=1e-14)
        assert d_sqrt_one_plus_slh4(x) == pytest.approx(2 * slh(x) ** 3, rel=1e-14)


open_omega = st.floats(min_value=-1.31, max_value=1.31)
open_k = st.floats(min_value=-1.85, max_value=1.85)


@given(open_omega)
def test_sl_and_tl_round_trip(x):
    assert arcsl(sl(x)).value == pytest.approx(x, abs=1e-13)
    assert arctl(tl(x)).value == pytest.approx(x, abs=1e-13)
    assert sl(-x) == -sl(x)


@given(open_k)
def test_slh_and_tlh_round_trip(x):
    assert arcslh(slh(x)).value == pytest.approx(x, abs=1e-13)
    # tlh flattens out near +-K, so its rounding error is amplified on the way back
    y = tlh(x)
    assert arctlh(y).value == pytest.approx(x, abs=1e-13 + 4 * math.ulp(y) * d_arctlh(y))
    assert tlh(-x) == -tlh(x)


@given(st.floats(min_value=1e-3, max_value=1.31))
def test_ordering_chain(x):
    # tlh(x) < sl(x) < x < slh(x) < tl(x)
    assert tlh(x) <= sl(x) <= x <= slh(x) <= tl(x)


@pytest.mark.parametrize("y", [1e3, 1e5, 1e6])
def test_slh_round_trip_error_is_at_the_rounding_floor(y):
    # x = arcslh(y) sits within 1/y of K; one ulp of x moves slh by about y**2 ulp
    x = arcslh(y).value
    floor = d_slh(x) * math.ulp(x)
    assert abs(slh(x) - y) <= 2 * floor + 4 * math.ulp(y)


def test_sl_round_trip_error_near_omega_is_at_the_rounding_floor():
    # 1 - sl(x) ~ (omega - x)**2 / 2 keeps few digits in binary64
    x = omega() - 1e-6
    y = sl(x)
    err = abs(arcsl(y).value - x)
    assert err <= 2 * math.ulp(1.0) * d_arcsl(y) + 1e-15
