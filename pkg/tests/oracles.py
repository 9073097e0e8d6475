"""Independent reference implementations for the test suite.

Everything here is mpmath at 40 significant digits, coded straight from the
defining series and integrals.  None of it touches the library's own
evaluation paths, so agreement is meaningful.  The heavier oracles use the
endpoint substitution s = t + (1-t)*theta, which moves the two algebraic
singularities to fixed abscissae where ``mp.quad`` handles them well.
"""

from __future__ import annotations

import mpmath as mp

mp.mp.dps = 40


def omega_ref(lam, t):
    """Normalized oscillatory kernel of order lam."""
    return mp.hyp0f1(mp.mpf(lam) + 1, -mp.mpf(t) ** 2 / 4)


def bessel_j_ref(lam, t):
    return mp.besselj(lam, t)


def hyp1f2_ref(a, b1, b2, x):
    return mp.hyp1f2(a, b1, b2, -mp.mpf(x) ** 2 / 4)


def hyp2f3_ref(a1, a2, b1, b2, b3, x):
    return mp.hyp2f3(a1, a2, b1, b2, b3, -mp.mpf(x) ** 2 / 4)


def bessel_k_ref(alpha, x):
    return mp.besselk(alpha, x)


def phi_profile_ref(d, delta, t):
    """First interpolation profile, from its defining beta-weighted integral."""
    d = mp.mpf(d)
    dl = mp.mpf(delta)
    t = mp.mpf(t)
    if t >= 1:
        return mp.mpf(0)
    p = dl - (d + 1) / 2
    q = dl - 1
    if t == 0:
        return mp.mpf(1)
    c = (1 - t) ** (p + q + 1) / mp.beta(2 * dl - d, dl)

    def g(th):
        s = t + th * (1 - t)
        return th ** p * (1 - th) ** q * (s + t) ** p

    return c * mp.quad(g, [0, 1])


def psi_profile_ref(d, delta, t):
    """Second interpolation profile (doubled endpoint exponent)."""
    d = mp.mpf(d)
    dl = mp.mpf(delta)
    t = mp.mpf(t)
    if t >= 1:
        return mp.mpf(0)
    p = dl - (d + 1) / 2
    q = 2 * dl - 1
    if t == 0:
        return mp.mpf(1)
    c = (1 - t) ** (p + q + 1) / mp.beta(2 * dl - d, 2 * dl)

    def g(th):
        s = t + th * (1 - t)
        return th ** p * (1 - th) ** q * (s + t) ** p

    return c * mp.quad(g, [0, 1])


def spectrum_w_ref(delta, r):
    dl = mp.mpf(delta)
    return hyp1f2_ref(dl, 3 * dl / 2, (3 * dl + 1) / 2, r)


def spectrum_q_ref(delta, r):
    dl = mp.mpf(delta)
    return hyp1f2_ref(dl, 2 * dl, 2 * dl + mp.mpf("0.5"), r)


def spectrum_askey_ref(d, alpha, r):
    d = mp.mpf(d)
    al = mp.mpf(alpha)
    return hyp1f2_ref((d + 1) / 2, (d + al + 1) / 2, (d + al + 2) / 2, r)


def radial_fourier_ref(profile, d, r, support=(0, 1)):
    """d-dimensional radial Fourier transform of a radial profile."""
    d = mp.mpf(d)
    r = mp.mpf(r)
    lam = (d - 2) / 2
    c = 2 * mp.pi ** (d / 2) / mp.gamma(d / 2)

    def g(t):
        return omega_ref(lam, r * t) * profile(t) * t ** (d - 1)

    pts = [support[0], support[1]]
    if r > 5:
        # resolve the oscillation: panel per half period
        n = int(r * (support[1] - support[0]) / mp.pi) + 1
        pts = [support[0] + (support[1] - support[0]) * mp.mpf(k) / n
               for k in range(n + 1)]
    return c * mp.quad(g, pts)


def gegenbauer_weight_ref(lam, r, f, upper, osc_scale=None):
    """Hankel-Schoenberg transform of f over [0, upper] against omega_lam(r t)."""
    r = mp.mpf(r)

    def g(t):
        return omega_ref(lam, r * t) * f(t)

    pts = [mp.mpf(0), mp.mpf(upper)]
    if r * upper > 10:
        n = int(r * upper / mp.pi) + 1
        pts = [upper * mp.mpf(k) / n for k in range(n + 1)]
    return mp.quad(g, pts)


def phi_alt_ref(d, delta, t):
    """First profile by the integration-by-parts form (needs delta > (d+1)/2)."""
    d = mp.mpf(d)
    dl = mp.mpf(delta)
    t = mp.mpf(t)
    if t >= 1:
        return mp.mpf(0)
    c = 1 / mp.beta(2 * dl - d - 1, dl + 1)

    def g(s):
        return (s * s - t * t) ** (dl - (d + 3) / 2) * s * (1 - s) ** dl

    return c * mp.quad(g, [t, 1])


def psi_alt_ref(d, delta, t):
    """Second profile by the integration-by-parts form (needs delta > (d+1)/2)."""
    d = mp.mpf(d)
    dl = mp.mpf(delta)
    t = mp.mpf(t)
    if t >= 1:
        return mp.mpf(0)
    c = 1 / mp.beta(2 * dl - d - 1, 2 * dl + 1)

    def g(s):
        return (s * s - t * t) ** (dl - (d + 3) / 2) * s * (1 - s) ** (2 * dl)

    return c * mp.quad(g, [t, 1])


def chernih_hubbert_ref(d, alpha, r):
    """Generalized-Wendland one-sided average, normalized to 1 at 0."""
    d = mp.mpf(d)
    al = mp.mpf(alpha)
    r = mp.mpf(r)
    if r >= 1:
        return mp.mpf(0)

    def g(t):
        return (t * t - r * r) ** (al - 1) * t * (1 - t) ** ((d + 1) / 2 + al)

    def g0(t):
        return t ** (2 * al - 1) * (1 - t) ** ((d + 1) / 2 + al)

    return mp.quad(g, [r, 1]) / mp.quad(g0, [0, 1])


def bessel_g_ref(d, delta, x):
    """Sobolev reference kernel via the modified Bessel function."""
    d = mp.mpf(d)
    dl = mp.mpf(delta)
    x = mp.mpf(x)
    nu = dl - d / 2
    if x == 0:
        return mp.gamma(nu) / (2 ** d * mp.pi ** (d / 2) * mp.gamma(dl))
    c = 1 / (2 ** (dl + d / 2 - 1) * mp.pi ** (d / 2) * mp.gamma(dl))
    return c * x ** nu * mp.besselk(nu, x)
