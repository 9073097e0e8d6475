"""Runnable acceptance criteria for the whole package.

Every quantitative commitment the library makes is encoded here as a named
check that compares independent computational routes of the same quantity at
a stated tolerance: closed forms against quadrature, series against
asymptotics, forward transforms against tabulated spectra, round trips
against the identity. The registry is consumed by the ``verify`` subcommand
of the command line and by the acceptance test suite, so both always agree
on what "correct" means.

Each check reports one primary measured figure against its threshold plus
any secondary clauses (with their own thresholds) folded into the pass/fail
decision and echoed in the detail string. A ``tolerance_scale`` below one
tightens every threshold proportionally.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from . import closed_forms, specfun
from ._dd import dd_add, dd_div, dd_div_d, dd_mul, dd_mul_d, two_prod
from .errors import CSKernelsError, ParameterOutOfRange
from .kernels import (
    Family,
    KernelSpec,
    Side,
    bessel_potential_g,
    closed_form,
    fourier_constant,
    radial_profile,
    spectral_density,
    spectrum_lambda,
    spectrum_q,
    spectrum_w,
    surface_area,
)
from .rkhs import (
    NodeSet,
    factorize_gram,
    gram,
    native_inner_product_1d,
    sobolev_equivalence_check,
    translate_spectrum,
)
from .transforms import (
    BinomialDensity,
    hankel_schoenberg,
    inverse_transform,
    order_walk,
    radial_fourier,
)

__all__ = ["CheckResult", "available_checks", "format_report", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one acceptance check."""

    check_id: str
    measured: float
    threshold: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{self.check_id:<12} measured={self.measured:<12.4e} threshold={self.threshold:<10.2e} {status}"
        if self.detail:
            text += f"  [{self.detail}]"
        return text


@dataclass(frozen=True)
class _Clause:
    label: str
    measured: float
    threshold: float


def _assemble(check_id: str, clauses: list[_Clause], scale: float) -> CheckResult:
    primary = clauses[0]
    passed = all(c.measured <= c.threshold * scale for c in clauses)
    extras = "; ".join(
        f"{c.label} {c.measured:.3e} (<= {c.threshold * scale:.1e})" for c in clauses[1:]
    )
    return CheckResult(
        check_id=check_id,
        measured=primary.measured,
        threshold=primary.threshold * scale,
        passed=passed,
        detail=extras if extras else primary.label,
    )


def _max_rel(got: np.ndarray, want: np.ndarray) -> float:
    denom = np.maximum(np.abs(want), 1e-300)
    return float(np.max(np.abs(got - want) / denom))


# ---------------------------------------------------------------------------
# closed-form tables and spectra
# ---------------------------------------------------------------------------


def _check_tables(scale: float) -> CheckResult:
    """Quadrature profile evaluation against every registered closed form."""
    t = np.linspace(0.0, 0.99, 100)
    worst = 0.0
    rows = 0
    for kind, d, order in closed_forms.list_profile_forms():
        family = Family.WENDLAND_TYPE if kind == "phi" else Family.SMOOTH
        spec = KernelSpec(family, d, order)
        profile = radial_profile(spec)
        numeric = np.asarray(profile.quadrature_values(t), dtype=float)
        reference = np.asarray([closed_form(spec, Side.PROFILE, float(ti)) for ti in t])
        worst = max(worst, _max_rel(numeric, reference))
        rows += 1
    return _assemble(
        "tables", [_Clause(f"{rows} table rows, 100 points each", worst, 1e-8)], scale
    )


def _dd_sin_cos(r: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """sin(r) and cos(r) in double-double precision via Taylor series.

    Intended for |r| <= 2, where forty terms push the truncation error far
    below the double-double epsilon.
    """
    r2h, r2l = two_prod(r, r)
    sin_term = (r, 0.0)
    cos_term = (1.0, 0.0)
    sin_sum = sin_term
    cos_sum = cos_term
    for k in range(1, 40):
        cos_term = dd_mul(*cos_term, r2h, r2l)
        cos_term = dd_div_d(*cos_term, -(2.0 * k - 1.0) * (2.0 * k))
        cos_sum = dd_add(*cos_sum, *cos_term)
        sin_term = dd_mul(*sin_term, r2h, r2l)
        sin_term = dd_div_d(*sin_term, -(2.0 * k) * (2.0 * k + 1.0))
        sin_sum = dd_add(*sin_sum, *sin_term)
        if abs(sin_term[0]) < 1e-35 and abs(cos_term[0]) < 1e-35:
            break
    return sin_sum, cos_sum


def _dd_power(r: float, p: int) -> tuple[float, float]:
    acc = two_prod(r, r)
    for _ in range(p - 2):
        acc = dd_mul_d(*acc, r)
    return acc


def _dd_elementary_spectrum(kind: str, r: float) -> float:
    """Small-argument evaluation of an elementary spectrum expression.

    The expressions all cancel like r**p near zero while their terms stay
    order one, so float64 loses up to eps * r**-(p-1) relative accuracy
    there. Double-double arithmetic keeps roughly 31 digits, which absorbs
    that amplification comfortably down to r = 0.05 and below.
    """
    (sh, sl), (ch, cl) = _dd_sin_cos(r)
    if kind == "w":
        # (120 r + 60 r cos r - 180 sin r) / r^5
        acc = dd_add(*two_prod(120.0, r), *dd_mul(*two_prod(60.0, r), ch, cl))
        acc = dd_add(*acc, *dd_mul_d(sh, sl, -180.0))
        power = 5
    elif kind == "q":
        # 840 (r^3 - 12 r + 15 sin r - 3 r cos r) / r^7
        acc = dd_add(*_dd_power(r, 3), *two_prod(-12.0, r))
        acc = dd_add(*acc, *dd_mul_d(sh, sl, 15.0))
        acc = dd_add(*acc, *dd_mul(*two_prod(-3.0, r), ch, cl))
        acc = dd_mul_d(*acc, 840.0)
        power = 7
    elif kind == "a12":
        # 6 (r - sin r) / r^3
        acc = dd_mul_d(*dd_add(r, 0.0, -sh, -sl), 6.0)
        power = 3
    elif kind == "a13":
        # (12 r^2 - 24 + 24 cos r) / r^4
        acc = dd_add(*dd_mul_d(*two_prod(r, r), 12.0), *dd_mul_d(ch, cl, 24.0))
        acc = dd_add(*acc, -24.0, 0.0)
        power = 4
    else:
        raise ParameterOutOfRange(f"unknown elementary spectrum kind {kind!r}")
    return dd_div(*acc, *_dd_power(r, power))[0]


_DD_SPLIT = 2.0


def _reference_spectrum(kind: str, grid: np.ndarray) -> np.ndarray:
    """Elementary spectrum values, accurate in the relative sense everywhere.

    Below the split radius the double-double route sidesteps cancellation;
    above it plain float64 evaluation is already good to ~1e-13 relative.
    """
    out = np.empty_like(grid)
    small = grid < _DD_SPLIT
    out[small] = [_dd_elementary_spectrum(kind, float(r)) for r in grid[small]]
    big = grid[~small]
    if kind == "w":
        values = (120.0 * big + 60.0 * big * np.cos(big) - 180.0 * np.sin(big)) / big**5
    elif kind == "q":
        values = (
            840.0
            / big**7
            * (big**3 - 12.0 * big + 15.0 * np.sin(big) - 3.0 * big * np.cos(big))
        )
    elif kind == "a12":
        values = 6.0 * (big - np.sin(big)) / big**3
    elif kind == "a13":
        values = (12.0 * big**2 - 24.0 + 24.0 * np.cos(big)) / big**4
    else:
        raise ParameterOutOfRange(f"unknown elementary spectrum kind {kind!r}")
    out[~small] = values
    return out


def _compensated_1f2(a: float, b1: float, b2: float, r: float, terms: int = 2000) -> float:
    """Kahan-compensated partial sum of 1F2 at argument -r^2/4."""
    x = -0.25 * r * r
    total = 1.0
    carry = 0.0
    term = 1.0
    for k in range(terms):
        term *= (a + k) * x / ((b1 + k) * (b2 + k) * (k + 1.0))
        y = term - carry
        t = total + y
        carry = (t - total) - y
        total = t
        if abs(term) <= 1e-18 * abs(total):
            break
    return total


def _check_spectra(scale: float) -> CheckResult:
    """First/second family spectral closed forms plus the small-argument series."""
    grid = np.geomspace(0.05, 1e3, 400)
    w_closed = _reference_spectrum("w", grid)
    q_closed = _reference_spectrum("q", grid)
    got_w = np.asarray([spectrum_w(2.0, float(r)) for r in grid])
    got_q = np.asarray([spectrum_q(2.0, float(r)) for r in grid])
    worst_closed = max(_max_rel(got_w, w_closed), _max_rel(got_q, q_closed))

    small = np.geomspace(1e-4, 1e-2, 25)
    ref_w = np.asarray([_compensated_1f2(2.0, 3.0, 3.5, float(r)) for r in small])
    ref_q = np.asarray([_compensated_1f2(2.0, 4.0, 4.5, float(r)) for r in small])
    got_w_small = np.asarray([spectrum_w(2.0, float(r)) for r in small])
    got_q_small = np.asarray([spectrum_q(2.0, float(r)) for r in small])
    worst_series = max(_max_rel(got_w_small, ref_w), _max_rel(got_q_small, ref_q))
    return _assemble(
        "spectra",
        [
            _Clause("closed forms on [0.05, 1e3]", worst_closed, 1e-8),
            _Clause("small-argument series", worst_series, 1e-10),
        ],
        scale,
    )


def _check_askey(scale: float) -> CheckResult:
    """Power-kernel spectra against their elementary forms and the d=1 transform."""
    grid = np.geomspace(0.05, 500.0, 400)
    references = {
        (1, 2.0): _reference_spectrum("a12", grid),
        (1, 3.0): _reference_spectrum("a13", grid),
        (3, 2.0): _reference_spectrum("w", grid),
    }
    worst = 0.0
    for (d, alpha), reference in references.items():
        got = np.asarray([spectrum_lambda(d, alpha, float(r)) for r in grid])
        worst = max(worst, _max_rel(got, reference))

    profile = radial_profile(KernelSpec(Family.ASKEY, 1, 2.0))
    worst_transform = 0.0
    for xi in (0.5, 2.0, 10.0, 40.0):
        got = radial_fourier(1, profile, xi, tol=1e-9)
        want = (4.0 / xi**2) * (1.0 - math.sin(xi) / xi)
        worst_transform = max(worst_transform, abs(got - want) / abs(want))
    return _assemble(
        "askey",
        [
            _Clause("elementary spectra on [0.05, 500]", worst, 1e-8),
            _Clause("d=1 transform identity", worst_transform, 1e-7),
        ],
        scale,
    )


# ---------------------------------------------------------------------------
# transform identities
# ---------------------------------------------------------------------------

_FORWARD_RADII = (0.5, 1.0, 5.0, 20.0, 50.0)


def _check_forward(scale: float) -> CheckResult:
    """Forward transforms of both compact profiles against weighted spectra."""
    worst = 0.0
    cases = [
        (Family.WENDLAND_TYPE, d, delta, spectrum_w)
        for d in (1, 2, 3)
        for delta in (2.0, 2.5, 3.0)
    ]
    cases += [
        (Family.SMOOTH, d, delta, spectrum_q) for d in (1, 2, 3) for delta in (2.0, 2.5, 3.0)
    ]
    cases.append((Family.SMOOTH, 1, 0.75, spectrum_q))
    count = 0
    for family, d, delta, spectrum in cases:
        spec = KernelSpec(family, d, delta)
        profile = radial_profile(spec)
        weight = fourier_constant(spec)
        for r in _FORWARD_RADII:
            got = radial_fourier(d, profile, r, tol=1e-7)
            want = weight * spectrum(delta, r)
            worst = max(worst, abs(got - want) / abs(want))
            count += 1
    return _assemble(
        "forward",
        [_Clause(f"{count} transform evaluations", worst, 1e-6)],
        scale,
    )


def _check_inversion(scale: float) -> CheckResult:
    """Inverse transform of the spectral density recovers the profile."""
    worst = 0.0
    for d, delta in ((1, 2.0), (2, 2.5), (3, 2.0)):
        spec = KernelSpec(Family.WENDLAND_TYPE, d, delta)
        density = spectral_density(spec)
        profile = radial_profile(spec)
        lam = 0.5 * (d - 2)
        for t in (0.1, 0.3, 0.5, 0.7, 0.9):
            recovered = inverse_transform(lam, density, t)
            value = recovered * fourier_constant(spec) / (surface_area(d) * t ** (d - 1))
            worst = max(worst, abs(value - float(profile(t))))
    return _assemble(
        "inversion",
        [_Clause("round trips at 15 points", worst, 1e-4)],
        scale,
    )


def _check_orderwalk(scale: float) -> CheckResult:
    """Order-walk value preservation plus the hypergeometric reductions."""
    worst_walk = 0.0
    for d in (1, 2, 3):
        source = BinomialDensity(1.3, 0.5 * (d + 1), squared_argument=True)
        for lam in (0.5 * d, 0.5 * d + 1.0):
            walked = order_walk(lam, d, source)
            for r in (1.0, 5.0, 20.0):
                lhs = hankel_schoenberg(lam, source, r)
                rhs = radial_fourier(d, walked, r) / surface_area(d)
                worst_walk = max(worst_walk, abs(rhs - lhs) / max(abs(lhs), 1e-300))

    alphas, betas, orders, radii = (0.7, 1.5, 3.2), (0.6, 1.0, 2.5), (-0.4, 0.5, 2.0), (0.5, 2.0, 10.0)
    worst_sq = 0.0
    worst_plain = 0.0
    for a in alphas:
        for b in betas:
            squared = BinomialDensity(a, b, squared_argument=True)
            plain = BinomialDensity(a, b)
            for lam in orders:
                for r in radii:
                    got = hankel_schoenberg(lam, squared, r)
                    want = specfun.hyp1f2(b, a + b, lam + 1.0, r).value
                    worst_sq = max(worst_sq, abs(got - want) / max(abs(want), 1e-300))
                    got = hankel_schoenberg(lam, plain, r)
                    want = specfun.hyp2f3(
                        0.5 * b, 0.5 * (b + 1.0), 0.5 * (a + b), 0.5 * (a + b + 1.0), lam + 1.0, r
                    ).value
                    worst_plain = max(worst_plain, abs(got - want) / max(abs(want), 1e-300))
    return _assemble(
        "orderwalk",
        [
            _Clause("walk value preservation", worst_walk, 1e-6),
            _Clause("squared-density reduction", worst_sq, 1e-7),
            _Clause("plain-density reduction", worst_plain, 1e-7),
        ],
        scale,
    )


# ---------------------------------------------------------------------------
# positivity, equivalence, asymptotics
# ---------------------------------------------------------------------------


def _check_positivity(scale: float) -> CheckResult:
    """Strict spectral positivity and two-sided Sobolev equivalence bounds."""
    grid = np.geomspace(1e-6, 1e6, 400)
    scan_grid = np.concatenate([[0.0], grid])
    compact = [
        KernelSpec(Family.WENDLAND_TYPE, 3, 2.0),
        KernelSpec(Family.WENDLAND_TYPE, 2, 2.5),
        KernelSpec(Family.SMOOTH, 1, 0.75),
        KernelSpec(Family.SMOOTH, 3, 2.0),
        KernelSpec(Family.ASKEY, 1, 2.0),
        KernelSpec(Family.ASKEY, 3, 2.0),
    ]
    violation = 0.0
    ratios = []
    for spec in compact:
        density = spectral_density(spec)
        values = np.asarray(density(grid), dtype=float)
        if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
            violation = math.inf
        c1, c2 = sobolev_equivalence_check(spec, scan_grid)
        if not (c1 > 0.0 and math.isfinite(c2)):
            violation = math.inf
        ratios.append(f"{spec.family.value}({spec.dimension},{spec.order:g}) c2/c1={c2 / c1:.3g}")

    worst_reference = 0.0
    for d in (1, 2, 3):
        spec = KernelSpec(Family.BESSEL_POTENTIAL, d, 0.5 * (d + 1))
        c1, c2 = sobolev_equivalence_check(spec, scan_grid)
        worst_reference = max(worst_reference, abs(c1 - 1.0), abs(c2 - 1.0))

    clauses = [
        _Clause("reference family constants off unity", worst_reference, 1e-12),
        _Clause("positivity violations", violation, 0.0),
    ]
    result = _assemble("positivity", clauses, scale)
    detail = result.detail + "; " + "; ".join(ratios)
    return CheckResult(result.check_id, result.measured, result.threshold, result.passed, detail)


def _check_asymptotic(scale: float) -> CheckResult:
    """Two-term tail of the first family, one-term tail of the second."""
    radii = (200.0, 400.0, 800.0)
    errs_w = []
    for r in radii:
        two_term = 120.0 * (1.0 + math.cos(r - 2.0 * math.pi) / 2.0)
        errs_w.append(abs(r**4 * spectrum_w(2.0, r) - two_term))
    errs_q = [abs(r**4 * spectrum_q(2.0, r) - 840.0) for r in radii]

    decreasing = all(a > b for a, b in zip(errs_w, errs_w[1:])) and all(
        a > b for a, b in zip(errs_q, errs_q[1:])
    )
    fitted_w = [e * r for e, r in zip(errs_w, radii)]
    fitted_q = [e * r * r for e, r in zip(errs_q, radii)]
    ratio = max(max(fitted_w) / min(fitted_w), max(fitted_q) / min(fitted_q))
    measured = ratio if decreasing else math.inf
    detail = (
        f"first family C={fitted_w[0]:.1f}/{fitted_w[1]:.1f}/{fitted_w[2]:.1f}, "
        f"second family C={fitted_q[0]:.0f}/{fitted_q[1]:.0f}/{fitted_q[2]:.0f}"
    )
    result = _assemble(
        "asymptotic", [_Clause("fitted tail-constant spread", measured, 2.0)], scale
    )
    return CheckResult(result.check_id, result.measured, result.threshold, result.passed, detail)


# ---------------------------------------------------------------------------
# Gram layer and the reproducing identity
# ---------------------------------------------------------------------------

_GRAM_SPECS = {
    Family.WENDLAND_TYPE: {1: 2.0, 2: 2.5, 3: 3.0},
    Family.SMOOTH: {1: 0.75, 2: 1.5, 3: 2.0},
    Family.ASKEY: {1: 2.0, 2: 1.5, 3: 2.0},
}


def _check_gram(scale: float) -> CheckResult:
    """Cholesky positive-definiteness certificates over seeded node sets."""
    sizes = (5, 17, 40, 80, 200)
    smallest = math.inf
    count = 0
    for family, orders in _GRAM_SPECS.items():
        for trial in range(20):
            d = 1 + trial % 3
            spec = KernelSpec(family, d, orders[d])
            rng = np.random.default_rng(7000 + 100 * count + trial)
            size = sizes[trial % len(sizes)]
            pts = rng.uniform(0.0, 2.0, size=(size, d))
            direction = rng.normal(size=d)
            pts[1] = pts[0] + 1e-3 * direction / np.linalg.norm(direction)
            try:
                factorization = factorize_gram(gram(spec, NodeSet(d, pts)))
            except CSKernelsError:
                return _assemble(
                    "gram", [_Clause("factorization failed", math.inf, 0.0)], scale
                )
            smallest = min(smallest, factorization.min_pivot)
            count += 1
    return _assemble(
        "gram",
        [_Clause(f"{count} factorizations, min pivot {smallest:.3e}", -smallest, 0.0)],
        scale,
    )


def _reproducing_pairs(seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    pairs = rng.uniform(0.0, 2.0, size=(10, 2))
    # keep the offsets away from zero so the pair exercises the oscillatory
    # integrator rather than collapsing onto the self-product route
    tight = np.abs(pairs[:, 0] - pairs[:, 1]) < 0.05
    pairs[tight, 1] += 0.25
    return pairs


def _check_reproducing(scale: float) -> CheckResult:
    """Native inner products of translates against the kernel itself."""
    wend = KernelSpec(Family.WENDLAND_TYPE, 1, 2.0)
    profile_w = radial_profile(wend)
    worst = 0.0
    for x, y in _reproducing_pairs(20260815):
        value = native_inner_product_1d(
            wend, translate_spectrum(wend, y), translate_spectrum(wend, x)
        )
        worst = max(worst, abs(value - float(profile_w(abs(x - y)))))

    askey = KernelSpec(Family.ASKEY, 1, 2.0)
    profile_a = radial_profile(askey)
    fc = fourier_constant(askey)
    worst_explicit = 0.0
    for x, y in _reproducing_pairs(20270815):
        offset = abs(x - y)
        want = float(profile_a(offset))
        value = native_inner_product_1d(
            askey, translate_spectrum(askey, y), translate_spectrum(askey, x)
        )
        worst = max(worst, abs(value - want))

        # the explicit frequency weight xi^3/(xi - sin xi): folding both
        # translate spectra into it leaves a weighted cosine integral that
        # QUADPACK's oscillatory rule evaluates independently
        def reduced(xi: float) -> float:
            if xi < 1e-4:
                shape = 1.0 / 6.0 - xi * xi / 120.0
            else:
                shape = (xi - math.sin(xi)) / xi**3
            return (9.0 * fc * fc / math.pi) * shape

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            explicit, _ = quad(
                reduced, 0.0, np.inf, weight="cos", wvar=offset, limit=400, limlst=200
            )
        worst_explicit = max(worst_explicit, abs(explicit - want))
    return _assemble(
        "reproducing",
        [
            _Clause("native route, 20 pairs", worst, 1e-6),
            _Clause("explicit-weight route, 10 pairs", worst_explicit, 1e-6),
        ],
        scale,
    )


def _check_bessel(scale: float) -> CheckResult:
    """Elementary reference values and route agreement for the decaying family."""
    worst_reference = 0.0
    xs = np.linspace(0.1, 10.0, 50)
    for d in (1, 2, 3):
        delta = 0.5 * (d + 1)
        norm = 2.0**d * math.pi ** (0.5 * (d - 1)) * math.gamma(0.5 * (d + 1))
        for x in xs:
            got = bessel_potential_g(d, delta, float(x))
            want = math.exp(-float(x)) / norm
            worst_reference = max(worst_reference, abs(got - want) / want)

    worst_routes = 0.0
    probe = np.array([0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
    for d in (1, 2, 3):
        for m in (0, 1, 2):
            spec = KernelSpec(Family.BESSEL_POTENTIAL, d, 0.5 * (d + 1) + m)
            profile = radial_profile(spec)
            elementary = np.asarray(profile(probe), dtype=float)
            integral = np.asarray(profile.quadrature_values(probe), dtype=float)
            worst_routes = max(worst_routes, _max_rel(integral, elementary))
    return _assemble(
        "bessel",
        [
            _Clause("half-integer reference values", worst_reference, 1e-10),
            _Clause("finite sum vs integral route", worst_routes, 1e-9),
        ],
        scale,
    )


# ---------------------------------------------------------------------------
# registry and driver
# ---------------------------------------------------------------------------

_CHECKS = {
    "tables": _check_tables,
    "spectra": _check_spectra,
    "askey": _check_askey,
    "forward": _check_forward,
    "inversion": _check_inversion,
    "orderwalk": _check_orderwalk,
    "positivity": _check_positivity,
    "asymptotic": _check_asymptotic,
    "gram": _check_gram,
    "reproducing": _check_reproducing,
    "bessel": _check_bessel,
}


def available_checks() -> tuple[str, ...]:
    """Identifiers of all registered acceptance checks, in report order."""
    return tuple(_CHECKS)


def _thread_count(explicit: int | None) -> int:
    if explicit is not None:
        value = int(explicit)
    else:
        raw = os.environ.get("KERNEL_VERIFY_THREADS", "")
        value = int(raw) if raw.strip() else min(4, os.cpu_count() or 1)
    if value < 1:
        raise ParameterOutOfRange(f"thread count must be at least 1, got {value}")
    return value


def run_checks(
    only=None, *, tolerance_scale: float = 1.0, threads: int | None = None
) -> list[CheckResult]:
    """Run the registered checks and return their results in report order.

    ``only`` restricts to a subset of identifiers, ``tolerance_scale``
    multiplies every threshold (values below one tighten the suite), and
    ``threads`` caps the worker pool (environment variable
    ``KERNEL_VERIFY_THREADS`` supplies the default).
    """
    if not (tolerance_scale > 0.0 and math.isfinite(tolerance_scale)):
        raise ParameterOutOfRange(
            f"tolerance scale must be positive and finite, got {tolerance_scale!r}"
        )
    selected = list(_CHECKS) if only is None else [str(name) for name in only]
    unknown = [name for name in selected if name not in _CHECKS]
    if unknown:
        raise ParameterOutOfRange(
            f"unknown check ids {unknown}; available: {', '.join(_CHECKS)}"
        )
    workers = _thread_count(threads)
    if workers == 1 or len(selected) == 1:
        return [_CHECKS[name](tolerance_scale) for name in selected]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_CHECKS[name], tolerance_scale) for name in selected]
        return [f.result() for f in futures]


def format_report(results) -> str:
    """One line per check plus a summary tail."""
    lines = [result.line() for result in results]
    failures = sum(1 for result in results if not result.passed)
    lines.append(
        f"# {len(list(results)) - failures}/{len(list(results))} checks passed"
        if failures
        else f"# all {len(list(results))} checks passed"
    )
    return "\n".join(lines)
