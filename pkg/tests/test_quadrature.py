"""Rules and oscillatory engines against beta-function and oracle targets."""

import math

import numpy as np
import pytest

from cskernels.errors import ParameterOutOfRange, QuadratureNonconvergence
from cskernels.quadrature import (
    gauss_jacobi,
    gauss_legendre,
    integrate_graded,
    integrate_oscillatory_finite,
    integrate_oscillatory_halfline,
    integrate_weighted,
)

from oracles import omega_ref


def _beta(a, b):
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def test_legendre_rule_polynomial_exactness():
    rule = gauss_legendre(6)
    x, w = rule.map_to(-1.0, 2.0)
    # degree-11 polynomial integrated exactly by a 6-point rule
    assert w @ x**11 == pytest.approx((2.0**12 - 1.0) / 12.0, rel=1e-13)


def test_jacobi_rule_beta_identity():
    # Int_0^1 s^1.5 (1-s)^2.5 * s^2 ds = B(4.5, 3.5)
    got = integrate_weighted(lambda s: s**2, 0.0, 1.0, left_exp=1.5, right_exp=2.5, n=12)
    assert got == pytest.approx(_beta(4.5, 3.5), rel=1e-14)


def test_jacobi_rule_affine_scaling():
    # Int_2^5 (s-2)^0.5 (5-s)^1.5 ds = 3^3 B(1.5, 2.5)
    got = integrate_weighted(lambda s: np.ones_like(s), 2.0, 5.0, 0.5, 1.5, n=8)
    assert got == pytest.approx(27.0 * _beta(1.5, 2.5), rel=1e-14)


def test_jacobi_rule_caching_and_validation():
    assert gauss_jacobi(16, 1.0, 2.0) is gauss_jacobi(16, 1.0, 2.0)
    with pytest.raises(ParameterOutOfRange):
        gauss_jacobi(8, -1.0, 0.0)
    with pytest.raises(ParameterOutOfRange):
        gauss_legendre(0)


def test_rule_nodes_are_immutable():
    rule = gauss_legendre(9)
    with pytest.raises(ValueError):
        rule.nodes[0] = 0.0


def test_graded_handles_both_endpoint_singularities():
    # arcsine weight: Int_0^1 s^-0.5 (1-s)^-0.5 ds = pi
    got = integrate_graded(lambda s: np.ones_like(s), 0.0, 1.0, -0.5, -0.5)
    assert got == pytest.approx(math.pi, rel=1e-12)


def test_graded_matches_beta_with_smooth_factor():
    # Int_0^1 s^0.25 (1-s)^3 (2+s) ds
    expected = 2.0 * _beta(1.25, 4.0) + _beta(2.25, 4.0)
    got = integrate_graded(lambda s: 2.0 + s, 0.0, 1.0, 0.25, 3.0)
    assert got == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("r", [0.5, 7.0, 20.0, 300.0, 2500.0])
def test_finite_engine_sine_integral(r):
    # Int_0^1 sin(r t)/(r t) dt = Si(r)/r, via the order-1/2 kernel
    import mpmath as mp

    value, est = integrate_oscillatory_finite(lambda t: np.ones_like(t), 0.5, r)
    ref = float(mp.si(r) / r)
    assert value == pytest.approx(ref, abs=5e-15)
    assert abs(value - ref) <= 10.0 * est + 1e-15


def test_finite_engine_with_endpoint_exponents():
    # Int_0^1 t^2 (1-t)^3 omega_0(r t) dt against the oracle
    r = 40.0
    value, est = integrate_oscillatory_finite(
        lambda t: np.ones_like(t), 0.0, r, left_exp=2.0, right_exp=3.0
    )
    import mpmath as mp

    n = int(r / math.pi) + 1
    ref = float(
        mp.quad(
            lambda t: t**2 * (1 - t) ** 3 * omega_ref(0.0, r * t),
            [mp.mpf(k) / n for k in range(n + 1)],
        )
    )
    assert value == pytest.approx(ref, abs=2e-14)


def test_finite_engine_zero_argument_is_plain_integral():
    value, _ = integrate_oscillatory_finite(
        lambda t: np.ones_like(t), 1.0, 0.0, left_exp=1.0, right_exp=1.0
    )
    assert value == pytest.approx(1.0 / 6.0, rel=1e-13)


def test_finite_engine_rejects_empty_range():
    with pytest.raises(ParameterOutOfRange):
        integrate_oscillatory_finite(lambda t: t, 0.5, 1.0, upper=0.0)


@pytest.mark.parametrize("r", [0.3, 3.0, 50.0])
def test_halfline_engine_exponential_weight(r):
    # Int_0^inf sin(r t)/(r t) e^-t dt = atan(r)/r
    value, est, panels = integrate_oscillatory_halfline(lambda t: np.exp(-t), 0.5, r)
    ref = math.atan(r) / r
    assert value == pytest.approx(ref, abs=5e-12)
    assert abs(value - ref) <= 10.0 * est + 1e-13
    assert panels <= 200


@pytest.mark.parametrize("r", [2.0, 10.0])
def test_halfline_engine_algebraic_decay(r):
    # Int_0^inf cos(r t)/(1+t^2) dt = pi/2 e^-r: tails need acceleration
    value, est, _ = integrate_oscillatory_halfline(
        lambda t: 1.0 / (1.0 + t * t), -0.5, r
    )
    assert value == pytest.approx(math.pi / 2.0 * math.exp(-r), abs=5e-12)


def test_halfline_engine_head_exponent_routes_agree():
    # t^3 folded into the smooth part vs declared as the head exponent
    r = 5.0
    a, _, _ = integrate_oscillatory_halfline(
        lambda t: t**3 * np.exp(-t), 0.5, r
    )
    b, _, _ = integrate_oscillatory_halfline(
        lambda t: np.exp(-t), 0.5, r, head_exp=3.0
    )
    assert a == pytest.approx(b, rel=1e-11)


def test_halfline_engine_raises_when_budget_exhausted():
    with pytest.raises(QuadratureNonconvergence):
        integrate_oscillatory_halfline(
            lambda t: 1.0 / (1.0 + 0.01 * t), 0.5, 0.01, max_panels=6
        )
    with pytest.raises(ParameterOutOfRange):
        integrate_oscillatory_halfline(lambda t: np.exp(-t), 0.5, 0.0)
