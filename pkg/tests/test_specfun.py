"""Special-function layer: wrappers, the U-function expansion, Bessel K."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cskernels import specfun
from cskernels.errors import ConvergenceFailure, ParameterOutOfRange
from cskernels.quadrature import integrate_weighted
from cskernels.specfun import Regime, SeriesEvaluation, UFunctionParams

from oracles import bessel_k_ref, hyp1f2_ref, omega_ref

# (alpha, x, K_alpha(x)) frozen from mpmath, dps=40
BESSEL_K_ANCHORS = [
    (0.0, 0.7, 0.6605198599151016),
    (2.5, 1.3, 1.5226914007398955),
    (7.0, 22.0, 2.1858363105368073e-10),
    (1.0, 0.05, 19.909674325882506),
]


def test_log_gamma_and_beta_basics():
    assert specfun.log_gamma(1.0) == 0.0
    assert specfun.log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)
    assert specfun.beta(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-14)
    assert specfun.beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)


@pytest.mark.parametrize("bad", [0.0, -1.0, -0.5])
def test_log_gamma_domain(bad):
    with pytest.raises(ParameterOutOfRange):
        specfun.log_gamma(bad)


def test_beta_domain():
    with pytest.raises(ParameterOutOfRange):
        specfun.beta(-1.0, 2.0)
    with pytest.raises(ParameterOutOfRange):
        specfun.beta(1.0, 0.0)


def test_omega_order_domain():
    with pytest.raises(ParameterOutOfRange):
        specfun.omega(-0.6, 1.0)
    with pytest.raises(ParameterOutOfRange):
        specfun.omega(math.nan, 1.0)
    assert specfun.omega(-0.5, 2.0) == pytest.approx(math.cos(2.0), abs=1e-13)


def test_omega_half_integer_domain():
    with pytest.raises(ParameterOutOfRange):
        specfun.omega_half_integer(-2, 1.0)
    with pytest.raises(ParameterOutOfRange):
        specfun.omega_half_integer(31, 1.0)


@settings(max_examples=60, deadline=None)
@given(
    lam=st.floats(min_value=-0.4, max_value=8.0),
    t=st.floats(min_value=0.05, max_value=60.0),
)
def test_omega_derivative_identity(lam, t):
    # d/dt omega_lam(t) = -t / (2 (lam+1)) * omega_{lam+1}(t)
    h = 1e-5 * max(1.0, t)
    num = (specfun.omega(lam, t + h) - specfun.omega(lam, t - h)) / (2.0 * h)
    rhs = -t / (2.0 * (lam + 1.0)) * specfun.omega(lam + 1.0, t)
    assert num == pytest.approx(rhs, abs=5e-7 * max(1.0, t))


@pytest.mark.parametrize("lam", [0.3, 1.3, 2.0, 4.75])
def test_omega_poisson_integral_route(lam):
    # omega_lam(t) = 2/B(lam+1/2, 1/2) * Int_0^1 cos(t s) (1-s^2)^(lam-1/2) ds
    c = 2.0 / specfun.beta(lam + 0.5, 0.5)
    for t in [0.4, 3.0, 9.0]:
        val = c * integrate_weighted(
            lambda s: np.cos(t * s) * (1.0 + s) ** (lam - 0.5),
            0.0,
            1.0,
            left_exp=0.0,
            right_exp=lam - 0.5,
            n=64,
        )
        assert val == pytest.approx(specfun.omega(lam, t), abs=1e-12)


def test_hyp1f2_returns_series_evaluation():
    se = specfun.hyp1f2(2.0, 3.0, 3.5, 5.0)
    assert isinstance(se, SeriesEvaluation)
    assert se.regime is Regime.SERIES
    assert se.value == pytest.approx(0.2744656080250665, rel=1e-12)
    assert se.error_estimate < 1e-12 * abs(se.value)


def test_hyp1f2_domain_and_convergence_errors():
    with pytest.raises(ParameterOutOfRange):
        specfun.hyp1f2(2.0, -3.0, 3.5, 1.0)
    with pytest.raises(ParameterOutOfRange):
        specfun.hyp1f2(2.0, 3.0, 3.5, 1.0, max_terms=0)
    with pytest.raises(ConvergenceFailure):
        specfun.hyp1f2(2.0, 3.0, 3.5, 400.0)
    # modest x but absurd tolerance also fails loudly
    with pytest.raises(ConvergenceFailure):
        specfun.hyp1f2(2.0, 3.0, 3.5, 60.0, tol=1e-15)


def test_hyp1f2_collapses_to_omega_when_rho_is_one():
    # 1F2(nu; nu, nu + 1/2; -x^2/4) = omega_{nu - 1/2}(x)
    for nu, x in [(1.5, 3.0), (2.0, 7.0), (3.25, 11.0)]:
        se = specfun.hyp1f2(nu, nu, nu + 0.5, x)
        assert se.value == pytest.approx(specfun.omega(nu - 0.5, x), abs=1e-13)


def test_hyp2f3_matches_oracle():
    se = specfun.hyp2f3(1.0, 3.0, 2.0, 2.5, 4.0, 6.0)
    assert se.value == pytest.approx(0.279320042997299, rel=1e-12)


def test_ufunction_params_validation():
    with pytest.raises(ParameterOutOfRange):
        UFunctionParams(0.0, 2.0)
    with pytest.raises(ParameterOutOfRange):
        UFunctionParams(1.5, -1.0)
    with pytest.raises(ParameterOutOfRange):
        UFunctionParams(40.0, 40.0)
    p = UFunctionParams(1.5, 2.0)
    assert p.rho == 1.5


def test_u_asymptotic_rejects_oscillatory_limit():
    with pytest.raises(ParameterOutOfRange):
        specfun.u_asymptotic(UFunctionParams(1.0, 2.0), 10.0)
    with pytest.raises(ParameterOutOfRange):
        specfun.u_asymptotic(UFunctionParams(1.5, 2.0), 0.0)


@pytest.mark.parametrize(
    "rho,nu", [(1.5, 2.0), (2.0, 2.0), (1.5, 2.5), (2.0, 3.5), (1.25, 1.5)]
)
def test_u_asymptotic_error_estimate_is_honest(rho, nu):
    params = UFunctionParams(rho, nu)
    for x in [40.0, 100.0, 400.0]:
        se = specfun.u_asymptotic(params, x)
        assert se.regime is Regime.ASYMPTOTIC
        ref = float(
            hyp1f2_ref(nu, rho * nu, rho * nu + 0.5, x)
        )
        assert abs(se.value - ref) <= 3.0 * se.error_estimate, (rho, nu, x)


def test_u_asymptotic_exact_leading_constants():
    # rho=3/2, nu=2: algebraic part 120/x^4, oscillation 60 cos(x)/x^4
    se = specfun.u_asymptotic(UFunctionParams(1.5, 2.0), 500.0)
    expected = 120.0 / 500.0**4 * (1.0 + math.cos(500.0) / 2.0)
    assert se.value == pytest.approx(expected, rel=1e-6)


@pytest.mark.parametrize("alpha,x,expected", BESSEL_K_ANCHORS)
def test_bessel_k_frozen_anchors(alpha, x, expected):
    assert specfun.bessel_k(alpha, x) == pytest.approx(expected, rel=1e-12)


def test_bessel_k_oracle_grid():
    for alpha in [0.0, 0.25, 1.0, 3.5, 10.5]:
        for x in [0.005, 0.3, 2.0, 30.0, 250.0]:
            got = specfun.bessel_k(alpha, x)
            ref = float(bessel_k_ref(alpha, x))
            assert got == pytest.approx(ref, rel=2e-13), (alpha, x)


def test_bessel_k_half_integer_closed_form():
    for x in [0.3, 1.0, 8.0]:
        exact = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
        assert specfun.bessel_k(0.5, x) == pytest.approx(exact, rel=1e-13)


def test_bessel_k_symmetry_and_domain():
    assert specfun.bessel_k(-2.5, 1.7) == specfun.bessel_k(2.5, 1.7)
    with pytest.raises(ParameterOutOfRange):
        specfun.bessel_k(1.0, 0.0)
    with pytest.raises(ParameterOutOfRange):
        specfun.bessel_k(101.0, 1.0)
    assert specfun.bessel_k(1.0, 800.0) == 0.0
