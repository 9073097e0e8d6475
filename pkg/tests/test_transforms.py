"""Transform-layer tests: forward transforms against hypergeometric series,
the order-lowering operator, half-line inversion round trips, and the
cosine-integral kernel route.

Most expectations here are structural identities between components that
are themselves anchored to frozen oracle values in their own test modules
(the hypergeometric series in test_specfun, profiles and spectra in
test_kernels), so the references are computed live.
"""

import math

import numpy as np
import pytest

from cskernels import kernels as K
from cskernels import specfun
from cskernels import transforms as T
from cskernels.backend import omega
from cskernels.errors import (
    DecayTooSlow,
    NotAvailable,
    ParameterOutOfRange,
    QuadratureNonconvergence,
)
from cskernels.quadrature import gauss_jacobi, gauss_legendre

LEMMA_ALPHAS = (0.7, 1.5, 3.2)
LEMMA_BETAS = (0.6, 1.0, 2.5)
LEMMA_ORDERS = (-0.4, 0.5, 2.0)
LEMMA_ARGS = (0.5, 2.0, 10.0)


def log_beta(a, b):
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def trapezoid(y, x):
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    return float(0.5 * np.sum((y[1:] + y[:-1]) * np.diff(x)))


class TestQuadratureRuleContract:
    def test_legendre_weights_sum_to_two(self):
        for n in (8, 24, 48):
            rule = gauss_legendre(n)
            assert rule.kind == "legendre"
            assert rule.nodes.size == rule.weights.size == n
            assert np.all(rule.weights > 0.0)
            assert np.all((rule.nodes > -1.0) & (rule.nodes < 1.0))
            assert abs(rule.weights.sum() - 2.0) <= 1e-13

    def test_legendre_monomial_exactness(self):
        n = 24
        rule = gauss_legendre(n)
        for k in range(2 * n):
            got = float(rule.weights @ rule.nodes**k)
            want = 0.0 if k % 2 else 2.0 / (k + 1)
            assert abs(got - want) <= 1e-12

    def test_jacobi_first_moments(self):
        a_exp, b_exp = 1.2, 0.4
        rule = gauss_jacobi(16, a_exp, b_exp)
        assert rule.kind == "jacobi"
        assert np.all(rule.weights > 0.0)
        m0 = 2.0 ** (a_exp + b_exp + 1.0) * math.exp(log_beta(a_exp + 1.0, b_exp + 1.0))
        m1 = m0 * (b_exp - a_exp) / (a_exp + b_exp + 2.0)
        assert abs(float(rule.weights.sum()) - m0) <= 1e-13 * m0
        assert abs(float(rule.weights @ rule.nodes) - m1) <= 1e-13 * m0


class TestOscillatoryIntegralConfig:
    def test_defaults(self):
        cfg = T.OscillatoryIntegralConfig()
        assert cfg.tail_tolerance == 1e-6
        assert cfg.max_panels == 2000
        assert cfg.nodes_per_panel == 64

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"panel_length_factor": 0.0},
            {"panel_length_factor": -1.0},
            {"tail_tolerance": 0.0},
            {"tail_tolerance": float("nan")},
            {"max_panels": 9},
            {"nodes_per_panel": 2},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ParameterOutOfRange):
            T.OscillatoryIntegralConfig(**kwargs)


class TestBinomialDensity:
    @pytest.mark.parametrize("squared", [False, True])
    def test_normalised(self, squared):
        for a, b in [(0.7, 0.6), (1.5, 2.5), (3.2, 1.0)]:
            dens = T.BinomialDensity(a, b, squared_argument=squared)
            total = T.hankel_schoenberg(0.0, dens, 0.0)
            assert abs(total - 1.0) <= 1e-10

    def test_rejects_nonpositive_parameters(self):
        with pytest.raises(ParameterOutOfRange):
            T.BinomialDensity(0.0, 1.0)
        with pytest.raises(ParameterOutOfRange):
            T.BinomialDensity(1.0, -2.0)

    def test_pointwise_values(self):
        plain = T.BinomialDensity(1.7, 2.2)
        t = 0.4
        want = (1 - t) ** 0.7 * t**1.2 * math.exp(-log_beta(1.7, 2.2))
        assert plain(t) == pytest.approx(want, rel=1e-14)
        sq = T.BinomialDensity(1.7, 2.2, squared_argument=True)
        want = 2 * (1 - t * t) ** 0.7 * t**3.4 * math.exp(-log_beta(1.7, 2.2))
        assert sq(t) == pytest.approx(want, rel=1e-14)
        assert sq(1.0) == 0.0
        assert sq(1.7) == 0.0


class TestIntegrandProtocol:
    def test_call_masks_support(self):
        ig = T.Integrand(lambda t: np.ones_like(t), 1.2, 0.7)
        vals = ig(np.array([0.25, 0.9, 1.0, 2.0, -0.25]))
        assert vals[2] == 0.0 and vals[3] == 0.0
        assert vals[0] == pytest.approx(0.25**1.2 * 0.75**0.7, rel=1e-14)
        assert vals[4] == vals[0]
        assert isinstance(ig(0.5), float)

    def test_rejects_nonintegrable_exponents(self):
        with pytest.raises(ParameterOutOfRange):
            T.Integrand(lambda t: t, -1.0, 0.0)
        with pytest.raises(ParameterOutOfRange):
            T.Integrand(lambda t: t, 0.0, -1.5)

    def test_adapter_accepts_profiles_and_callables(self):
        prof = K.radial_profile(K.KernelSpec(K.Family.WENDLAND_TYPE, 3, 2.0))
        ig = T.as_integrand(prof)
        assert ig.left_exponent == 0.0
        assert ig.right_exponent == prof.boundary_exponent
        ig2 = T.as_integrand(lambda t: np.cos(t))
        assert ig2.left_exponent == 0.0 and ig2.right_exponent == 0.0
        with pytest.raises(ParameterOutOfRange):
            T.as_integrand(42)

    def test_adapter_rejects_noncompact_profile(self):
        prof = K.radial_profile(K.KernelSpec(K.Family.BESSEL_POTENTIAL, 3, 2.5))
        with pytest.raises(NotAvailable):
            T.as_integrand(prof)

    def test_power_weighted_shifts_left_exponent(self):
        base = T.BinomialDensity(1.7, 1.1)
        shifted = T.power_weighted(base, 2.0)
        assert shifted.left_exponent == base.left_exponent + 2.0
        assert shifted.right_exponent == base.right_exponent
        t = np.array([0.3, 0.6])
        assert np.allclose(shifted(t), t**2 * base(t), rtol=1e-14)

    def test_scalar_only_callable_is_adapted(self):
        ig = T.as_integrand(lambda t: math.cos(t))
        vals = ig(np.array([0.2, 0.5]))
        assert vals == pytest.approx([math.cos(0.2), math.cos(0.5)], rel=1e-14)


class TestForwardTransform:
    def test_squared_binomial_gives_1f2(self):
        for a in LEMMA_ALPHAS:
            for b in LEMMA_BETAS:
                dens = T.BinomialDensity(a, b, squared_argument=True)
                for lam in LEMMA_ORDERS:
                    for r in LEMMA_ARGS:
                        got = T.hankel_schoenberg(lam, dens, r)
                        want = specfun.hyp1f2(b, a + b, lam + 1.0, r).value
                        assert got == pytest.approx(want, rel=1e-7, abs=1e-12), (
                            a,
                            b,
                            lam,
                            r,
                        )

    def test_plain_binomial_gives_2f3(self):
        for a in LEMMA_ALPHAS:
            for b in LEMMA_BETAS:
                dens = T.BinomialDensity(a, b)
                for lam in LEMMA_ORDERS:
                    for r in LEMMA_ARGS:
                        got = T.hankel_schoenberg(lam, dens, r)
                        want = specfun.hyp2f3(
                            0.5 * b,
                            0.5 * (b + 1.0),
                            0.5 * (a + b),
                            0.5 * (a + b + 1.0),
                            lam + 1.0,
                            r,
                        ).value
                        assert got == pytest.approx(want, rel=1e-7, abs=1e-12), (
                            a,
                            b,
                            lam,
                            r,
                        )

    def test_zero_argument_returns_total_mass(self):
        assert T.hankel_schoenberg(0.3, T.BinomialDensity(2.0, 1.5), 0.0) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_kernel_recovered_from_matched_binomial(self):
        # with alpha = lam + 1 - d/2 and beta = d/2 the transform of the
        # squared binomial collapses to the pure kernel of order lam
        for d, lam in [(1, 1.2), (3, 2.5)]:
            dens = T.BinomialDensity(lam + 1.0 - 0.5 * d, 0.5 * d, squared_argument=True)
            for r in (0.7, 3.0, 30.0):
                got = T.hankel_schoenberg(0.5 * (d - 2), dens, r)
                assert got == pytest.approx(omega(lam, r), rel=1e-8, abs=1e-12)

    def test_explicit_integrand_matches_scaled_density(self):
        ig = T.Integrand(lambda t: np.ones_like(t), 1.2, 0.7)
        dens = T.BinomialDensity(1.7, 2.2)
        scale = math.exp(log_beta(1.7, 2.2))
        for r in (0.5, 4.0):
            assert T.hankel_schoenberg(0.5, ig, r) == pytest.approx(
                scale * T.hankel_schoenberg(0.5, dens, r), rel=1e-10
            )

    def test_order_below_minimum_rejected(self):
        with pytest.raises(ParameterOutOfRange):
            T.hankel_schoenberg(-0.6, T.BinomialDensity(1.0, 1.0), 1.0)

    def test_nonconvergence_is_reported(self):
        # a genuinely discontinuous integrand defeats the smooth-factor
        # contract, so the error estimate can never clear the target
        jump = T.Integrand(lambda t: np.where(t < 0.37, 1.0, 0.0), 0.0, 0.0)
        with pytest.raises(QuadratureNonconvergence):
            T.hankel_schoenberg(0.5, jump, 3.0, tol=1e-12)


class TestRadialFourier:
    def test_family_forward_matches_spectrum(self):
        cases = [
            (K.Family.WENDLAND_TYPE, 3, 2.0),
            (K.Family.SMOOTH, 1, 0.75),
            (K.Family.SMOOTH, 2, 2.5),
            (K.Family.ASKEY, 1, 2.0),
        ]
        for fam, d, order in cases:
            spec = K.KernelSpec(fam, d, order)
            prof = K.radial_profile(spec)
            dens = K.spectral_density(spec)
            for r in (0.5, 5.0, 50.0):
                got = T.radial_fourier(d, prof, r, tol=1e-7)
                want = dens.fourier_constant * dens(r)
                assert got == pytest.approx(want, rel=1e-6), (fam, d, order, r)

    def test_truncated_parabola_hat_d1(self):
        prof = K.radial_profile(K.KernelSpec(K.Family.ASKEY, 1, 2.0))
        for r in (0.5, 2.0, 10.0, 40.0):
            got = T.radial_fourier(1, prof, r)
            want = 4.0 / r**2 * (1.0 - math.sin(r) / r)
            assert got == pytest.approx(want, rel=1e-9)

    def test_zero_frequency_is_profile_mass(self):
        prof = K.radial_profile(K.KernelSpec(K.Family.WENDLAND_TYPE, 3, 2.0))
        # (1-t)^2 against 4 pi t^2 on [0, 1]
        want = 4.0 * math.pi * (1.0 / 3.0 - 2.0 / 4.0 + 1.0 / 5.0)
        assert T.radial_fourier(3, prof, 0.0) == pytest.approx(want, rel=1e-12)

    def test_dimension_validation(self):
        with pytest.raises(ParameterOutOfRange):
            T.radial_fourier(0, T.BinomialDensity(1.0, 1.0), 1.0)
        with pytest.raises(ParameterOutOfRange):
            T.radial_fourier(2.5, T.BinomialDensity(1.0, 1.0), 1.0)


class TestOrderWalk:
    def test_transform_value_preserved(self):
        for d in (1, 2, 3):
            src = T.BinomialDensity(1.3, 0.5 * (d + 1), squared_argument=True)
            for lam in (0.5 * d, 0.5 * d + 1.0):
                walked = T.order_walk(lam, d, src)
                for r in (1.0, 5.0, 20.0):
                    lhs = T.hankel_schoenberg(lam, src, r)
                    rhs = T.radial_fourier(d, walked, r) / K.surface_area(d)
                    assert rhs == pytest.approx(lhs, rel=1e-6, abs=1e-10), (d, lam, r)

    def test_walked_beta_density_proportional_to_smooth_profile(self):
        for d, delta in [(1, 0.8), (3, 2.0)]:
            lam = delta - 0.5
            src = T.BinomialDensity(2 * delta, 2 * delta)
            walked = T.order_walk(lam, d, src)
            const = 2.0 * math.exp(
                log_beta(2 * delta - d, 2 * delta)
                - log_beta(delta + 0.5 - 0.5 * d, 0.5 * d)
                - log_beta(2 * delta, 2 * delta)
            )
            for t in (0.15, 0.45, 0.8):
                got = walked(t) / const
                want = K.profile_psi(d, delta, t)
                assert got == pytest.approx(want, rel=1e-8), (d, delta, t)

    def test_boundary_exponent_matches_construction(self):
        src = T.BinomialDensity(1.5, 1.0)
        walked = T.order_walk(2.0, 3, src)
        assert walked.right_exponent == pytest.approx(2.0 - 1.5 + 1.0 + 0.5)
        assert walked(1.0) == 0.0
        assert walked(1.2) == 0.0
        assert walked(-0.4) == walked(0.4)

    def test_l1_contraction_for_oscillating_source(self):
        # cancellation inside the walk integral shrinks the weighted L1 mass
        # of a sign-changing source well below the source's own mass; the
        # grid is graded into the origin where the walked profile may blow
        # up at an integrable rate
        f = T.as_integrand(lambda t: np.sin(7 * np.pi * t))
        grid = np.concatenate(
            [np.geomspace(1e-12, 1e-2, 400), np.linspace(1e-2, 1.0, 1201)[1:]]
        )
        rhs = trapezoid(np.abs(f(grid)), grid)
        for d, lam in [(1, 0.6), (2, 1.5), (3, 2.0)]:
            walked = T.order_walk(lam, d, f)
            lhs = trapezoid(np.abs(walked(grid)) * grid ** (d - 1), grid)
            assert lhs <= 0.5 * rhs, (d, lam, lhs, rhs)

    def test_dimension_walk_between_transforms(self):
        # walking a 3-d profile down to d = 1 multiplies the transform by
        # the ratio of sphere surface constants
        prof = K.radial_profile(K.KernelSpec(K.Family.WENDLAND_TYPE, 3, 2.0))
        walked = T.order_walk(0.5, 1, T.power_weighted(prof, 2.0))
        const = K.surface_area(3) / K.surface_area(1)
        for r in (0.7, 3.0, 12.0):
            lhs = T.radial_fourier(3, prof, r)
            rhs = const * T.radial_fourier(1, walked, r)
            assert rhs == pytest.approx(lhs, rel=1e-6)

    def test_order_too_small_rejected(self):
        with pytest.raises(ParameterOutOfRange):
            T.order_walk(0.5, 3, T.BinomialDensity(1.0, 1.0))
        with pytest.raises(ParameterOutOfRange):
            T.order_walk(0.0, 2, T.BinomialDensity(1.0, 1.0))

    def test_origin_value_needs_decaying_source(self):
        walked = T.order_walk(1.2, 3, T.BinomialDensity(1.3, 0.5))
        with pytest.raises(ParameterOutOfRange):
            walked(0.0)
        # but evaluation away from the origin is fine
        assert walked(0.5) > 0.0


class TestInverseTransform:
    def test_round_trip_recovers_wendland_profile(self):
        spec = K.KernelSpec(K.Family.WENDLAND_TYPE, 3, 2.0)
        dens = K.spectral_density(spec)
        t = 0.5
        rec = T.inverse_transform(0.5, dens, t)
        phi_rec = rec * K.fourier_constant(spec) / (K.surface_area(3) * t**2)
        assert abs(phi_rec - 0.25) <= 1e-4

    def test_inverse_of_askey_density_recovers_profile(self):
        spec = K.KernelSpec(K.Family.ASKEY, 1, 2.0)
        dens = K.spectral_density(spec)
        for t in (0.0, 0.3):
            rec = T.inverse_transform(-0.5, dens, t)
            phi_rec = rec * K.fourier_constant(spec) / K.surface_area(1)
            want = (1.0 - t) ** 2
            assert abs(phi_rec - want) <= 1e-4, t

    def test_inverse_of_smooth_density_recovers_profile(self):
        spec = K.KernelSpec(K.Family.SMOOTH, 1, 0.75)
        dens = K.spectral_density(spec)
        t = 0.6
        rec = T.inverse_transform(-0.5, dens, t)
        phi_rec = rec * K.fourier_constant(spec) / K.surface_area(1)
        want = K.profile_psi(1, 0.75, t)
        assert abs(phi_rec - want) <= 1e-4

    def test_vanishes_at_origin_for_positive_order(self):
        dens = K.spectral_density(K.KernelSpec(K.Family.WENDLAND_TYPE, 3, 2.0))
        assert T.inverse_transform(0.5, dens, 0.0) == 0.0

    def test_decay_guard(self):
        dens = K.spectral_density(K.KernelSpec(K.Family.WENDLAND_TYPE, 3, 2.0))
        with pytest.raises(DecayTooSlow):
            T.inverse_transform(1.5, dens, 0.5)
        # askey in d = 2 decays like r^-3, too slow for order 1/2 + margin
        askey = K.spectral_density(K.KernelSpec(K.Family.ASKEY, 2, 2.0))
        with pytest.raises(DecayTooSlow):
            T.inverse_transform(1.0, askey, 0.5)

    def test_unknown_decay_rejected(self):
        with pytest.raises(ParameterOutOfRange):
            T.inverse_transform(0.5, lambda r: (1.0 + r * r) ** -3.0, 0.5)

    def test_explicit_decay_exponent_accepted(self):
        got = T.inverse_transform(
            -0.5, lambda r: (1.0 + r * r) ** -1.5, 0.7, decay_exponent=3.0
        )
        # cosine transform pair: (2/pi) * integral cos(rt) (1+r^2)^(-3/2) dr
        # equals (2/pi) * t * K_1(t) for the modified Bessel K_1
        from scipy.special import k1

        want = 2.0 / math.pi * 0.7 * k1(0.7)
        assert got == pytest.approx(want, abs=1e-6)

    def test_order_validation(self):
        dens = K.spectral_density(K.KernelSpec(K.Family.WENDLAND_TYPE, 3, 2.0))
        with pytest.raises(ParameterOutOfRange):
            T.inverse_transform(-0.8, dens, 0.5)

    def test_config_is_honoured(self):
        dens = K.spectral_density(K.KernelSpec(K.Family.ASKEY, 1, 2.0))
        cfg = T.OscillatoryIntegralConfig(tail_tolerance=1e-4, nodes_per_panel=32)
        rec = T.inverse_transform(-0.5, dens, 0.3, config=cfg)
        phi_rec = rec * K.fourier_constant(K.KernelSpec(K.Family.ASKEY, 1, 2.0)) / 2.0
        assert abs(phi_rec - 0.49) <= 1e-3

    def test_bessel_density_inverts_to_exponential_profile(self):
        # d = 1: the density (1+r^2)^-1 pairs with exp(-|x|)/2 times the
        # surface constant; order -1/2 keeps the volume weight trivial
        spec = K.KernelSpec(K.Family.BESSEL_POTENTIAL, 1, 1.0)
        dens = K.spectral_density(spec)
        t = 0.8
        rec = T.inverse_transform(-0.5, dens, t)
        want = math.exp(-t)  # (2/pi)*int cos(rt)/(1+r^2) dr = exp(-t)
        assert rec == pytest.approx(want, abs=1e-6)


class TestPoissonRoute:
    def test_half_order_is_sinc(self):
        for t in (0.3, 2.0, 7.5):
            assert abs(T.poisson_omega(0.5, t) - math.sin(t) / t) <= 1e-10

    def test_zero_argument_is_one(self):
        assert T.poisson_omega(2.0, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_matches_series_kernel(self):
        for lam, t in [(1.5, 7.0), (3.2, 15.0), (0.1, 2.0)]:
            assert T.poisson_omega(lam, t) == pytest.approx(
                omega(lam, t), rel=1e-9, abs=1e-12
            )

    def test_requires_order_above_minus_half(self):
        with pytest.raises(ParameterOutOfRange):
            T.poisson_omega(-0.5, 1.0)
