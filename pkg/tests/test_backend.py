"""Backend-level tests: series kernels against an independent oracle.

Anchor values are frozen from mpmath at 40 digits; the grid tests reevaluate
the oracle live so they stay meaningful when parameters change.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cskernels import backend
from cskernels import _ref

from oracles import bessel_j_ref, hyp1f2_ref, hyp2f3_ref, omega_ref

# (lam, t, omega) frozen from mpmath, dps=40
OMEGA_ANCHORS = [
    (-0.5, 2.0, -0.4161468365471424),
    (0.0, 1.0, 0.7651976865579666),
    (0.0, 20.0, 0.16702466434058316),
    (0.5, 12.05, -0.04097321342162634),
    (1.3, 14.0, 0.004495462717621327),
    (2.5, 44.0, -1.51165058784871e-05),
    (3.7, 85.0, -1.259116831515977e-06),
    (4.75, 30.0, -2.965931253479161e-05),
    (9.75, 25.0, -1.193143044017484e-06),
    (12.0, 46.0, -2.4687448408942947e-09),
]

# (a, b1, b2, x, 1F2(a; b1, b2; -x^2/4)) frozen from mpmath, dps=40
HYP1F2_ANCHORS = [
    (2.0, 3.0, 3.5, 5.0, 0.2744656080250665),
    (2.5, 3.75, 4.25, 30.0, 3.830972634248786e-05),
    (2.0, 4.0, 4.5, 12.0, 0.03623264105236119),
    (1.5, 2.5, 3.0, 8.0, 0.034756600365122854),
    (0.75, 1.125, 1.625, 3.0, 0.34949525298120204),
]

HYP2F3_ANCHORS = [
    (2.0, 2.5, 3.0, 3.25, 3.75, 20.0, 0.0032971282578926017),
    (1.0, 3.0, 2.0, 2.5, 4.0, 6.0, 0.279320042997299),
]

GRID_LAMS = [-0.5, -0.3, 0.0, 0.5, 1.0, 1.3, 2.5, 4.75, 7.0, 9.75, 12.0]
GRID_TS = [0.0, 1e-3, 0.3, 3.0, 11.9, 12.1, 17.0, 25.0, 38.0, 46.0, 60.0,
           85.0, 140.0, 350.0, 2500.0, 1e6]


@pytest.mark.parametrize("lam,t,expected", OMEGA_ANCHORS)
def test_omega_frozen_anchors(lam, t, expected):
    assert backend.omega(lam, t) == pytest.approx(expected, abs=1e-12, rel=1e-10)


@pytest.mark.parametrize("lam", GRID_LAMS)
def test_omega_oracle_grid(lam):
    for t in GRID_TS:
        got = backend.omega(lam, t)
        ref = float(omega_ref(lam, t))
        assert got == pytest.approx(ref, abs=2e-11), f"t={t}"


@pytest.mark.parametrize("lam", GRID_LAMS)
def test_omega_vec_matches_scalar(lam):
    tv = np.array(GRID_TS)
    vec = backend.omega_vec(lam, tv)
    scal = np.array([backend.omega(lam, t) for t in GRID_TS])
    np.testing.assert_allclose(vec, scal, rtol=0, atol=1e-12)


def test_omega_vec_preserves_shape():
    tv = np.linspace(0.0, 30.0, 12).reshape(3, 4)
    out = backend.omega_vec(1.0, tv)
    assert out.shape == (3, 4)
    assert out[0, 0] == 1.0


@pytest.mark.parametrize("n", [-1, 0, 1, 2, 5, 17, 30])
def test_omega_half_integer_matches_oracle(n):
    lam = n + 0.5
    for t in [0.5, 5.0, 30.0, 61.5, 80.0, 300.0]:
        got = backend.omega_half_integer(n, t)
        assert got == pytest.approx(float(omega_ref(lam, t)), abs=2e-11)


def test_omega_half_integer_closed_forms():
    # n = -1, 0, 1 are cos, sinc and the first spherical form
    for t in [0.7, 4.0, 19.0, 64.0]:
        assert backend.omega_half_integer(-1, t) == pytest.approx(math.cos(t), abs=5e-15)
        assert backend.omega_half_integer(0, t) == pytest.approx(math.sin(t) / t, abs=5e-15)
        expected = 3.0 * (math.sin(t) - t * math.cos(t)) / t**3
        assert backend.omega_half_integer(1, t) == pytest.approx(expected, abs=5e-13)


def test_omega_half_integer_seam_continuity():
    # series below the switch radius, recurrence above: both near t = 2*lam
    for n in [3, 9, 22]:
        lam = n + 0.5
        ts = max(12.0, 2.0 * lam)
        lo = backend.omega_half_integer(n, ts * 0.999)
        hi = backend.omega_half_integer(n, ts * 1.001)
        assert lo == pytest.approx(float(omega_ref(lam, ts * 0.999)), abs=1e-11)
        assert hi == pytest.approx(float(omega_ref(lam, ts * 1.001)), abs=1e-11)


@pytest.mark.parametrize("lam", [-0.5, 0.0, 1.0, 2.5, 7.0])
def test_bessel_j_oracle(lam):
    for t in [0.0, 1e-3, 1.0, 14.0, 52.0, 300.0]:
        got = backend.bessel_j(lam, t)
        assert got == pytest.approx(float(bessel_j_ref(lam, t)), abs=2e-11)


@pytest.mark.parametrize("a,b1,b2,x,expected", HYP1F2_ANCHORS)
def test_hyp1f2_frozen_anchors(a, b1, b2, x, expected):
    value, terms, err = backend.hyp1f2_series(a, b1, b2, x)
    assert value == pytest.approx(expected, rel=1e-12)
    assert terms >= 1
    assert err < 1e-12 * abs(expected) + 1e-20


@pytest.mark.parametrize("a1,a2,b1,b2,b3,x,expected", HYP2F3_ANCHORS)
def test_hyp2f3_frozen_anchors(a1, a2, b1, b2, b3, x, expected):
    value, _, err = backend.hyp2f3_series(a1, a2, b1, b2, b3, x)
    assert value == pytest.approx(expected, rel=1e-12)
    assert err < 1e-10 * abs(expected)


def test_hyp1f2_error_estimate_is_honest():
    # the reported estimate must bound the real error (modulo a small factor)
    for (a, b1, b2) in [(2.0, 3.0, 3.5), (2.5, 3.75, 4.25), (2.0, 4.0, 4.5)]:
        for x in [0.5, 10.0, 25.0, 40.0, 55.0, 70.0]:
            value, _, est = backend.hyp1f2_series(a, b1, b2, x)
            ref = float(hyp1f2_ref(a, b1, b2, x))
            assert abs(value - ref) <= 5.0 * est + 1e-18, (a, b1, b2, x)


def test_hyp1f2_degrades_loudly_not_silently():
    # far outside the series range the estimate must blow up or go infinite
    value, terms, est = backend.hyp1f2_series(2.0, 3.0, 3.5, 400.0)
    ref = float(hyp1f2_ref(2.0, 3.0, 3.5, 400.0))
    assert math.isnan(value) or est > abs(value - ref) / 5.0
    assert math.isnan(value) or est > abs(ref)


def test_hyp1f2_zero_argument():
    value, terms, err = backend.hyp1f2_series(2.0, 3.0, 3.5, 0.0)
    assert value == 1.0
    assert err < 1e-15


def test_hyp1f2_polynomial_termination():
    # negative integer numerator parameter truncates the series exactly
    value, terms, err = backend.hyp1f2_series(-2.0, 3.0, 3.5, 2.0)
    # 1 + (-2)/(3*3.5)*z + (-2)(-1)/(2*3*4*3.5*4.5)*z^2, z = -1
    expected = 1.0 - (-2.0) / (3.0 * 3.5) + 2.0 / (2.0 * 3.0 * 4.0 * 3.5 * 4.5)
    assert value == pytest.approx(expected, rel=1e-14)
    assert terms <= 6


@settings(max_examples=150, deadline=None)
@given(
    lam=st.floats(min_value=-0.5, max_value=10.0),
    t=st.floats(min_value=0.0, max_value=500.0),
)
def test_omega_bounded_and_even(lam, t):
    v = backend.omega(lam, t)
    assert abs(v) <= 1.0 + 1e-10
    assert backend.omega(lam, -t) == v


@settings(max_examples=60, deadline=None)
@given(
    lam=st.floats(min_value=0.5, max_value=8.0),
    t=st.floats(min_value=1e-2, max_value=40.0),
)
def test_omega_order_recurrence(lam, t):
    # omega_lam - omega_{lam-1} = t^2 / (4 lam (lam+1)) * omega_{lam+1}
    lhs = backend.omega(lam, t) - backend.omega(lam - 1.0, t)
    rhs = t * t / (4.0 * lam * (lam + 1.0)) * backend.omega(lam + 1.0, t)
    scale = max(1.0, t * t / (4.0 * lam * (lam + 1.0)))
    assert lhs == pytest.approx(rhs, abs=1e-9 * scale)


def test_pure_backend_always_importable():
    assert _ref.NAME == "pure"
    assert backend.BACKEND in backend.available_backends()


@pytest.mark.skipif(
    "compiled" not in backend.available_backends(),
    reason="compiled extension not built",
)
def test_backends_agree():
    from cskernels import _fast

    rng = np.random.default_rng(20240817)
    lams = [-0.5, 0.0, 0.9, 2.5, 5.25, 9.75]
    ts = np.concatenate([
        np.array([0.0, 1e-6]),
        rng.uniform(0.0, 60.0, size=40),
        rng.uniform(60.0, 5000.0, size=15),
    ])
    for lam in lams:
        for t in ts:
            assert _fast.omega(lam, float(t)) == pytest.approx(
                _ref.omega(lam, float(t)), abs=1e-13
            )
        np.testing.assert_allclose(
            _fast.omega_vec(lam, ts), _ref.omega_vec(lam, ts), rtol=0, atol=1e-13
        )
    for (a, b1, b2) in [(2.0, 3.0, 3.5), (2.5, 3.75, 4.25)]:
        for x in [0.0, 2.0, 17.0, 44.0]:
            vf, nf, ef = _fast.hyp1f2_series(a, b1, b2, x)
            vr, nr, er = _ref.hyp1f2_series(a, b1, b2, x)
            assert vf == pytest.approx(vr, rel=1e-13, abs=1e-18)
