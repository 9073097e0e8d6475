"""Kernel families: compactly supported radial profiles and their spectra.

Three compact families are provided, each indexed by the dimension ``d`` of
the ambient space and a smoothness order:

* ``ASKEY``: the truncated power ``(1-t)_+**alpha`` with spectral density
  ``spectrum_lambda``;
* ``WENDLAND_TYPE``: the profile ``profile_phi`` built from a one-sided
  power-weighted average, with spectral density ``spectrum_w``; reproduces
  the classical Wendland/Schaback/Chernih-Hubbert functions at special
  orders;
* ``SMOOTH``: the profile ``profile_psi`` with the doubled boundary
  exponent and spectral density ``spectrum_q``; fills in the low orders the
  second family misses.

A fourth, non-compact family (``BESSEL_POTENTIAL``) gives the classical
Sobolev reproducing kernels against which the compact ones are normalized;
it is a reference implementation only.

Profiles are normalized to 1 at the origin.  Spectral densities are the
plain hypergeometric values, normalized to 1 at frequency 0; the constant
relating a profile's d-dimensional Fourier transform to its density is
exposed separately through ``fourier_constant``.

Evaluation strategy for profiles away from the registered closed forms:
the defining integral is transformed by ``s = theta + (1 - theta) t`` so
the value factors as ``(1-t)**boundary_exponent * V(t)`` with ``V`` a
Gauss-Jacobi integral of a smooth positive function.  The boundary factor
is exact in floating point, which keeps relative accuracy uniform as the
support edge is approached.  Spectral densities are evaluated by the
compensated hypergeometric series where it certifies itself, then by
registered trigonometric forms, then by an oscillatory finite integral,
and for very large frequencies by the two-term asymptotic form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import closed_forms
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NotAvailable,
    ParameterOutOfRange,
    PositivityViolation,
)
from .quadrature import gauss_jacobi, integrate_graded, integrate_oscillatory_finite
from .specfun import (
    Regime,
    SeriesEvaluation,
    UFunctionParams,
    bessel_k,
    beta,
    hyp1f2,
    log_gamma,
    u_asymptotic,
)

__all__ = [
    "Family",
    "Side",
    "EvaluationMethod",
    "KernelSpec",
    "RadialProfile",
    "SpectralDensity",
    "validate_spec",
    "radial_profile",
    "spectral_density",
    "profile_phi",
    "profile_psi",
    "profile_askey",
    "spectrum_w",
    "spectrum_q",
    "spectrum_lambda",
    "closed_form",
    "bessel_potential_g",
    "fourier_constant",
    "forward_constant",
    "surface_area",
    "wendland_forward_weight",
    "smooth_forward_weight",
    "kernel_eval",
]


class Family(enum.Enum):
    """The four kernel families."""

    ASKEY = "askey"
    WENDLAND_TYPE = "wendland"
    SMOOTH = "smooth"
    BESSEL_POTENTIAL = "bessel"


class Side(enum.Enum):
    """Which half of a Fourier pair an operation refers to."""

    PROFILE = "profile"
    SPECTRUM = "spectrum"


class EvaluationMethod(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class KernelSpec:
    """A kernel family member: family tag, ambient dimension, and order.

    ``order`` is the exponent alpha for the ASKEY family and the Sobolev
    smoothness delta otherwise.  Construction checks only that the fields
    are well typed; the family-specific parameter inequalities are the job
    of :func:`validate_spec`.
    """

    family: Family
    dimension: int
    order: float

    def __post_init__(self) -> None:
        if not isinstance(self.family, Family):
            raise ParameterOutOfRange(f"family must be a Family member, got {self.family!r}")
        dim = self.dimension
        if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)):
            raise ParameterOutOfRange(f"dimension must be a positive integer, got {dim!r}")
        if dim < 1:
            raise ParameterOutOfRange(f"dimension must be a positive integer, got {dim}")
        object.__setattr__(self, "dimension", int(dim))
        order = float(self.order)
        if not math.isfinite(order):
            raise ParameterOutOfRange(f"order must be finite, got {order}")
        object.__setattr__(self, "order", order)


def validate_spec(spec: KernelSpec) -> KernelSpec:
    """Check the family's parameter inequality; return ``spec`` unchanged.

    Raises ParameterOutOfRange naming the violated inequality otherwise.
    """
    if not isinstance(spec, KernelSpec):
        raise ParameterOutOfRange(f"expected a KernelSpec, got {spec!r}")
    d, order = spec.dimension, spec.order
    if spec.family is Family.ASKEY:
        if d == 1 and not order >= 2.0:
            raise ParameterOutOfRange(
                f"ASKEY in dimension 1 requires alpha >= 2, got alpha={order}"
            )
        if d >= 2 and not order >= 0.5 * (d + 1):
            raise ParameterOutOfRange(
                f"ASKEY in dimension {d} requires alpha >= (d+1)/2 = {0.5 * (d + 1)}, "
                f"got alpha={order}"
            )
    elif spec.family is Family.WENDLAND_TYPE:
        if not order > max(1.0, 0.5 * d):
            raise ParameterOutOfRange(
                f"WENDLAND_TYPE requires delta > max(1, d/2) = {max(1.0, 0.5 * d)}, "
                f"got delta={order}"
            )
    elif spec.family is Family.SMOOTH:
        if not order > 0.5 * d:
            raise ParameterOutOfRange(
                f"SMOOTH requires delta > d/2 = {0.5 * d}, got delta={order}"
            )
    else:  # BESSEL_POTENTIAL
        if not order > 0.5 * d:
            raise ParameterOutOfRange(
                f"BESSEL_POTENTIAL requires delta > d/2 = {0.5 * d}, got delta={order}"
            )
    return spec


# ---------------------------------------------------------------------------
# normalization constants


def surface_area(d: int) -> float:
    """Surface measure of the unit sphere in R^d (2 pi^{d/2} / Gamma(d/2))."""
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
        raise ParameterOutOfRange(f"dimension must be a positive integer, got {d!r}")
    return 2.0 * math.exp(0.5 * d * math.log(math.pi) - log_gamma(0.5 * d))


def _forward_weight(d: int, delta: float, mult: float) -> float:
    # 2^{1-d} G(m delta) G(delta - d/2) / (G(delta) G(m delta - d) G(d/2))
    ln = (
        (1.0 - d) * math.log(2.0)
        + log_gamma(mult * delta)
        + log_gamma(delta - 0.5 * d)
        - log_gamma(delta)
        - log_gamma(mult * delta - d)
        - log_gamma(0.5 * d)
    )
    return math.exp(ln)


def wendland_forward_weight(d: int, delta: float) -> float:
    """Constant multiplying the forward spectral transform of profile_phi.

    The first-family spectral density equals this weight times the radial
    transform of the profile against the oscillatory kernel of order
    (d-2)/2 with measure t^{d-1} dt.  Defined for delta > d/2.
    """
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
        raise ParameterOutOfRange(f"dimension must be a positive integer, got {d!r}")
    delta = float(delta)
    if not delta > 0.5 * d:
        raise ParameterOutOfRange(f"weight requires delta > d/2, got delta={delta}, d={d}")
    return _forward_weight(d, delta, 3.0)


def smooth_forward_weight(d: int, delta: float) -> float:
    """Same as wendland_forward_weight for profile_psi (doubled exponent)."""
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
        raise ParameterOutOfRange(f"dimension must be a positive integer, got {d!r}")
    delta = float(delta)
    if not delta > 0.5 * d:
        raise ParameterOutOfRange(f"weight requires delta > d/2, got delta={delta}, d={d}")
    return _forward_weight(d, delta, 4.0)


def fourier_constant(spec: KernelSpec) -> float:
    """Constant linking the profile's d-dim Fourier transform to its density.

    fourier_transform(profile)(xi) = fourier_constant * density(|xi|) for
    the compact families; the reference family's transform is exactly
    (1 + r^2)^(-delta), so its constant is 1.
    """
    spec = validate_spec(spec)
    d, order = spec.dimension, spec.order
    if spec.family is Family.ASKEY:
        ln = (
            d * math.log(2.0)
            + 0.5 * (d - 1) * math.log(math.pi)
            + log_gamma(order + 1.0)
            + log_gamma(0.5 * (d + 1))
            - log_gamma(order + d + 1.0)
        )
        return math.exp(ln)
    if spec.family is Family.WENDLAND_TYPE:
        return surface_area(d) / wendland_forward_weight(d, order)
    if spec.family is Family.SMOOTH:
        return surface_area(d) / smooth_forward_weight(d, order)
    return 1.0


def forward_constant(spec: KernelSpec) -> float:
    """Constant multiplying the forward radial transform of the profile.

    density(r) = forward_constant * integral of profile(t) * t^{d-1} times
    the oscillatory kernel of order (d-2)/2 at r t, over t >= 0.  Equal to
    surface_area(d) / fourier_constant(spec) for every family.
    """
    return surface_area(validate_spec(spec).dimension) / fourier_constant(spec)


# ---------------------------------------------------------------------------
# Bessel-potential reference kernel


def _bessel_g_zero(d: int, delta: float) -> float:
    return math.exp(
        log_gamma(delta - 0.5 * d)
        - d * math.log(2.0)
        - 0.5 * d * math.log(math.pi)
        - log_gamma(delta)
    )


def _bessel_elementary_order(d: int, delta: float):
    """The integer m >= 0 with delta = m + (d+1)/2, or None."""
    m = delta - 0.5 * (d + 1)
    if m < -1e-12:
        return None
    rounded = round(m)
    if abs(m - rounded) <= 1e-12 * max(1.0, abs(m)):
        return int(rounded)
    return None


def _bessel_g_elementary(d: int, m: int, x: float) -> float:
    # exp(-x) x^m / (2^{m+d} pi^{(d-1)/2} G(m+(d+1)/2))
    #   * sum_k (m+k)! / (k! (m-k)!) (2x)^{-k}
    if x == 0.0:
        return _bessel_g_zero(d, m + 0.5 * (d + 1))
    base = (
        -(m + d) * math.log(2.0)
        - 0.5 * (d - 1) * math.log(math.pi)
        - log_gamma(m + 0.5 * (d + 1))
    )
    lead = None
    terms = []
    for k in range(m + 1):
        ln_t = (
            base
            + (m - k) * math.log(x)
            - k * math.log(2.0)
            + log_gamma(m + k + 1.0)
            - log_gamma(k + 1.0)
            - log_gamma(m - k + 1.0)
        )
        terms.append(ln_t)
        lead = ln_t if lead is None else max(lead, ln_t)
    acc = sum(math.exp(t - lead) for t in terms)
    try:
        return math.exp(lead - x) * acc
    except OverflowError:
        raise ParameterOutOfRange(
            f"reference kernel overflows at x={x:g} (d={d}, m={m})"
        ) from None


def _bessel_g_via_k(d: int, delta: float, x: float) -> float:
    nu = delta - 0.5 * d
    ln_c = -(
        (delta + 0.5 * d - 1.0) * math.log(2.0)
        + 0.5 * d * math.log(math.pi)
        + log_gamma(delta)
    )
    kval = bessel_k(abs(nu), x)
    if kval == 0.0:
        return 0.0
    return math.exp(ln_c + nu * math.log(x) + math.log(kval))


def bessel_potential_g(d: int, delta: float, x_norm: float) -> float:
    """The Sobolev reference kernel at radius x_norm.

    Inverse Fourier transform of (1 + |xi|^2)^(-delta) in d dimensions,
    evaluated at |x| = x_norm.  Uses the elementary exponential-polynomial
    form when delta - (d+1)/2 is a nonnegative integer, and the modified
    Bessel route otherwise.  The value at x_norm = 0 is finite exactly when
    delta > d/2.
    """
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
        raise ParameterOutOfRange(f"dimension must be a positive integer, got {d!r}")
    delta = float(delta)
    if not delta > 0.0:
        raise ParameterOutOfRange(f"reference kernel requires delta > 0, got {delta}")
    x = float(x_norm)
    if not x >= 0.0:
        raise ParameterOutOfRange(f"radius must be nonnegative, got {x}")
    if x == 0.0:
        if delta > 0.5 * d:
            return _bessel_g_zero(d, delta)
        raise ParameterOutOfRange(
            f"reference kernel is singular at 0 for delta <= d/2 (delta={delta}, d={d})"
        )
    m = _bessel_elementary_order(d, delta)
    if m is not None:
        return _bessel_g_elementary(d, m, x)
    return _bessel_g_via_k(d, delta, x)


# ---------------------------------------------------------------------------
# radial profiles


_V_AGREE = 5e-13


@lru_cache(maxsize=64)
def _rule01(right_exp: float, left_exp: float, n: int):
    x, w = gauss_jacobi(n, right_exp, left_exp).map_to(0.0, 1.0)
    return x, w


class RadialProfile:
    """Callable radial profile of a kernel family member.

    Instances evaluate the profile at scalar or array arguments; values are
    1 at 0 for the compact families and 0 outside the support.  The
    ``smooth_part``/``boundary_exponent`` pair exposes the factorization
    ``profile(t) = (1-t)**boundary_exponent * smooth_part(t)`` used by the
    spectral transforms, in which the edge factor is carried exactly.
    """

    def __init__(self, spec: KernelSpec):
        spec = validate_spec(spec)
        self.spec = spec
        d, order = spec.dimension, spec.order
        self._closed = None
        self._elementary_m = None
        self._p = self._q = self._norm = None
        if spec.family is Family.BESSEL_POTENTIAL:
            self.support_radius = math.inf
            self._elementary_m = _bessel_elementary_order(d, order)
            self.evaluation_method = (
                EvaluationMethod.CLOSED_FORM
                if self._elementary_m is not None
                else EvaluationMethod.QUADRATURE
            )
            return
        self.support_radius = 1.0
        if spec.family is Family.ASKEY:
            self.evaluation_method = EvaluationMethod.CLOSED_FORM
            return
        kind = "phi" if spec.family is Family.WENDLAND_TYPE else "psi"
        self._p = order - 0.5 * (d + 1)
        self._q = order - 1.0 if kind == "phi" else 2.0 * order - 1.0
        self._norm = beta(2.0 * self._p + 1.0, self._q + 1.0)
        try:
            self._closed = closed_forms.profile_closed_form(kind, d, order)
        except NotAvailable:
            self._closed = None
        self.evaluation_method = (
            EvaluationMethod.CLOSED_FORM if self._closed is not None else EvaluationMethod.QUADRATURE
        )

    @property
    def boundary_exponent(self) -> float:
        """Exponent of the exact (1-t) factor at the support edge."""
        fam = self.spec.family
        if fam is Family.ASKEY:
            return self.spec.order
        if fam is Family.BESSEL_POTENTIAL:
            raise NotAvailable("the reference family has unbounded support")
        return self._p + self._q + 1.0

    def smooth_part(self, t):
        """profile(t) / (1-t)**boundary_exponent on [0, 1), vectorized.

        Smooth and positive up to the support edge; equal to 1 identically
        for the ASKEY family.
        """
        fam = self.spec.family
        if fam is Family.BESSEL_POTENTIAL:
            raise NotAvailable("the reference family has unbounded support")
        arr = np.asarray(t, dtype=float)
        scalar = arr.ndim == 0
        flat = np.abs(np.atleast_1d(arr).ravel())
        if np.any(flat >= 1.0):
            raise ParameterOutOfRange("smooth_part is defined on [0, 1) only")
        if fam is Family.ASKEY:
            vals = np.ones_like(flat)
        else:
            vals = self._v_values(flat)
        return float(vals[0]) if scalar else vals.reshape(arr.shape)

    def _v_values(self, t: np.ndarray) -> np.ndarray:
        """The Gauss-Jacobi factor V on a 1-d array of points in [0, 1)."""
        p, q, norm = self._p, self._q, self._norm
        if t.size == 0:
            return np.empty(0)

        def with_rule(n: int) -> np.ndarray:
            x, w = _rule01(q, p, n)
            g = (2.0 * t[:, None] + x[None, :] * (1.0 - t[:, None])) ** p
            return (g @ w) / norm

        v64 = with_rule(64)
        v128 = with_rule(128)
        bad = np.abs(v128 - v64) > _V_AGREE * np.maximum(np.abs(v128), 1e-300)
        for i in np.flatnonzero(bad):
            ti = float(t[i])

            def g(theta, _ti=ti):
                return (2.0 * _ti + theta * (1.0 - _ti)) ** p / norm

            v128[i] = integrate_graded(g, 0.0, 1.0, left_exp=p, right_exp=q, n=32)
        return v128

    def _compact_quadrature(self, flat: np.ndarray) -> np.ndarray:
        vals = np.zeros_like(flat)
        inside = flat < 1.0
        ti = flat[inside]
        edge = (1.0 - ti) ** (self._p + self._q + 1.0)
        vals[inside] = edge * self._v_values(ti)
        vals[flat == 0.0] = 1.0
        return vals

    def quadrature_values(self, t):
        """Force the quadrature route (closed forms bypassed).

        For the reference family this is the modified-Bessel integral
        route, which double-checks the elementary forms.
        """
        arr = np.asarray(t, dtype=float)
        scalar = arr.ndim == 0
        flat = np.abs(np.atleast_1d(arr).ravel())
        fam = self.spec.family
        d, order = self.spec.dimension, self.spec.order
        if fam is Family.BESSEL_POTENTIAL:
            vals = np.array(
                [
                    _bessel_g_zero(d, order) if x == 0.0 else _bessel_g_via_k(d, order, x)
                    for x in flat
                ]
            )
        elif fam is Family.ASKEY:
            vals = np.where(flat < 1.0, np.clip(1.0 - flat, 0.0, None) ** order, 0.0)
        else:
            vals = self._compact_quadrature(flat)
        return float(vals[0]) if scalar else vals.reshape(arr.shape)

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        scalar = arr.ndim == 0
        flat = np.abs(np.atleast_1d(arr).ravel())
        fam = self.spec.family
        d, order = self.spec.dimension, self.spec.order
        if fam is Family.BESSEL_POTENTIAL:
            vals = np.array([bessel_potential_g(d, order, x) for x in flat])
        elif fam is Family.ASKEY:
            vals = np.where(flat < 1.0, np.clip(1.0 - flat, 0.0, None) ** order, 0.0)
        elif self._closed is not None:
            vals = np.where(flat < 1.0, self._closed(np.minimum(flat, 1.0)), 0.0)
        else:
            vals = self._compact_quadrature(flat)
        return float(vals[0]) if scalar else vals.reshape(arr.shape)


@lru_cache(maxsize=None)
def radial_profile(spec: KernelSpec) -> RadialProfile:
    """The (cached) radial profile object for a validated spec."""
    return RadialProfile(spec)


def profile_phi(d: int, delta: float, t):
    """First-family compact profile, normalized to 1 at 0.

    Requires delta > max(1, d/2).  Vectorized in ``t``.
    """
    return radial_profile(KernelSpec(Family.WENDLAND_TYPE, d, delta))(t)


def profile_psi(d: int, delta: float, t):
    """Second-family compact profile (doubled edge exponent), 1 at 0.

    Requires delta > d/2.  Vectorized in ``t``.
    """
    return radial_profile(KernelSpec(Family.SMOOTH, d, delta))(t)


def profile_askey(alpha: float, t):
    """Truncated power profile (1-t)_+**alpha.  Requires alpha > 0."""
    alpha = float(alpha)
    if not alpha > 0.0:
        raise ParameterOutOfRange(f"truncated power requires alpha > 0, got {alpha}")
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    flat = np.abs(np.atleast_1d(arr).ravel())
    vals = np.where(flat < 1.0, np.clip(1.0 - flat, 0.0, None) ** alpha, 0.0)
    return float(vals[0]) if scalar else vals.reshape(arr.shape)


# ---------------------------------------------------------------------------
# spectral densities


def _spectrum_shape(spec: KernelSpec):
    """Hypergeometric parameters (a; b1, b2), asymptotic shape, registry key."""
    d, order = spec.dimension, spec.order
    if spec.family is Family.WENDLAND_TYPE:
        return order, 1.5 * order, 1.5 * order + 0.5, 1.5, order, ("w", order)
    if spec.family is Family.SMOOTH:
        return order, 2.0 * order, 2.0 * order + 0.5, 2.0, order, ("q", order)
    if spec.family is Family.ASKEY:
        a = 0.5 * (d + 1)
        b1 = 0.5 * (d + order + 1.0)
        rho = (d + order + 1.0) / (d + 1.0)
        return a, b1, b1 + 0.5, rho, a, ("askey", d, order)
    raise NotAvailable("the reference family's density is (1+r^2)^(-delta)")


def _spectrum_series(a, b1, b2, r):
    return hyp1f2(a, b1, b2, r)


def _spectrum_quadrature(a, b1, b2, r, n=32):
    # binomial-density representation: smooth positive density against the
    # oscillatory kernel of order b2 - 1 on [0, 1]
    edge = b1 - a - 1.0
    scale = 2.0 / beta(b1 - a, a)

    def smooth(s):
        return scale * (1.0 + s) ** edge

    value, err = integrate_oscillatory_finite(
        smooth, b2 - 1.0, r, upper=1.0, left_exp=2.0 * a - 1.0, right_exp=edge, n=n
    )
    return value, err


def _spectrum_info(a, b1, b2, rho, nu, key, r, label) -> SeriesEvaluation:
    r = abs(float(r))
    if r == 0.0:
        return SeriesEvaluation(1.0, 1, 0.0, Regime.SERIES)
    result = None
    if r <= 100.0:
        try:
            result = _spectrum_series(a, b1, b2, r)
        except ConvergenceFailure:
            result = None
    if result is None and key is not None:
        try:
            cf = closed_forms.spectrum_closed_form(key)
        except NotAvailable:
            cf = None
        if cf is not None and r >= cf.min_r:
            value = float(cf(r))
            result = SeriesEvaluation(value, 1, 1e-12 * abs(value), Regime.CLOSED_FORM)
    if result is None and r <= 2500.0:
        value, err = _spectrum_quadrature(a, b1, b2, r)
        if err > 1e-10 * max(abs(value), 1e-290):
            value2, err2 = _spectrum_quadrature(a, b1, b2, r, n=48)
            if err2 < err:
                value, err = value2, err2
        panels = max(1, int(r / math.pi) + 1)
        result = SeriesEvaluation(value, panels, err, Regime.ASYMPTOTIC)
    if result is None:
        result = u_asymptotic(UFunctionParams(rho, nu), r)
    if not result.value > 0.0:
        raise PositivityViolation(
            f"{label} evaluated nonpositive at r={r:g}: got {result.value:g}"
        )
    return result


@dataclass(frozen=True)
class SpectralDensity:
    """Spectral density of a kernel family member, normalized to 1 at 0.

    ``fourier_constant`` is the factor turning this density into the
    profile's actual d-dimensional Fourier transform.  Calling the object
    evaluates the density; ``evaluate_with_info`` additionally reports the
    representation used and its error estimate.
    """

    spec: KernelSpec
    fourier_constant: float

    def evaluate_with_info(self, r: float) -> SeriesEvaluation:
        if self.spec.family is Family.BESSEL_POTENTIAL:
            rr = float(r)
            value = (1.0 + rr * rr) ** (-self.spec.order)
            return SeriesEvaluation(value, 1, 4e-16 * value, Regime.CLOSED_FORM)
        a, b1, b2, rho, nu, key = _spectrum_shape(self.spec)
        label = f"{self.spec.family.value} spectral density (order {self.spec.order:g})"
        return _spectrum_info(a, b1, b2, rho, nu, key, r, label)

    def evaluate(self, r: float) -> float:
        return self.evaluate_with_info(r).value

    def __call__(self, r):
        arr = np.asarray(r, dtype=float)
        scalar = arr.ndim == 0
        flat = np.atleast_1d(arr).ravel()
        vals = np.array([self.evaluate(x) for x in flat])
        return float(vals[0]) if scalar else vals.reshape(arr.shape)


@lru_cache(maxsize=None)
def spectral_density(spec: KernelSpec) -> SpectralDensity:
    """The (cached) spectral density object for a validated spec."""
    spec = validate_spec(spec)
    return SpectralDensity(spec, fourier_constant(spec))


def spectrum_w(delta: float, r: float) -> float:
    """First-family spectral density at frequency r.  Requires delta > 1."""
    delta = float(delta)
    if not delta > 1.0:
        raise ParameterOutOfRange(
            f"first-family spectra require delta > 1, got {delta}"
        )
    return _spectrum_info(
        delta,
        1.5 * delta,
        1.5 * delta + 0.5,
        1.5,
        delta,
        ("w", delta),
        r,
        "first-family spectral density",
    ).value


def spectrum_q(delta: float, r: float) -> float:
    """Second-family spectral density at frequency r.  Requires delta > 0."""
    delta = float(delta)
    if not delta > 0.0:
        raise ParameterOutOfRange(
            f"second-family spectra require delta > 0, got {delta}"
        )
    return _spectrum_info(
        delta,
        2.0 * delta,
        2.0 * delta + 0.5,
        2.0,
        delta,
        ("q", delta),
        r,
        "second-family spectral density",
    ).value


def spectrum_lambda(d: int, alpha: float, r: float) -> float:
    """Truncated-power spectral density at frequency r.

    Parameters must satisfy the ASKEY constraint (alpha >= 2 in dimension
    1, alpha >= (d+1)/2 otherwise).
    """
    spec = validate_spec(KernelSpec(Family.ASKEY, d, alpha))
    a, b1, b2, rho, nu, key = _spectrum_shape(spec)
    return _spectrum_info(a, b1, b2, rho, nu, key, r, "truncated-power spectral density").value


# ---------------------------------------------------------------------------
# closed-form registry access


def closed_form(spec: KernelSpec, side, r: float) -> float:
    """Registered closed-form value of a profile or spectral density.

    Raises NotAvailable when the (family, dimension, order) triple has no
    registered form on the requested side; callers fall back to quadrature
    or series evaluation.  Registered spectrum forms lose precision near 0
    (removable singularities), so tiny arguments are delegated to the
    series path; the returned value is still correct to working precision.
    """
    spec = validate_spec(spec)
    side = Side(side) if not isinstance(side, Side) else side
    r = abs(float(r))
    d, order = spec.dimension, spec.order
    fam = spec.family
    if side is Side.PROFILE:
        if fam is Family.ASKEY:
            return float(profile_askey(order, r))
        if fam is Family.BESSEL_POTENTIAL:
            m = _bessel_elementary_order(d, order)
            if m is None:
                raise NotAvailable(
                    f"no elementary form for the reference kernel at delta={order:g}, d={d}"
                )
            return _bessel_g_elementary(d, m, r)
        kind = "phi" if fam is Family.WENDLAND_TYPE else "psi"
        cf = closed_forms.profile_closed_form(kind, d, order)
        if r >= 1.0:
            return 0.0
        return float(cf(r))
    if fam is Family.BESSEL_POTENTIAL:
        return (1.0 + r * r) ** (-order)
    a, b1, b2, _, _, key = _spectrum_shape(spec)
    cf = closed_forms.spectrum_closed_form(key)
    if r < cf.min_r:
        return _spectrum_series(a, b1, b2, r).value if r > 0.0 else 1.0
    return float(cf(r))


# ---------------------------------------------------------------------------
# kernel evaluation


def kernel_eval(spec: KernelSpec, x, y) -> float:
    """Kernel value k(x, y) = profile(|x - y|) for points in R^d."""
    spec = validate_spec(spec)
    d = spec.dimension
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != (d,) or ya.shape != (d,):
        raise DimensionMismatch(
            f"points must be vectors of length {d}, got shapes {xa.shape} and {ya.shape}"
        )
    dist = float(np.linalg.norm(xa - ya))
    return float(radial_profile(spec)(dist))
