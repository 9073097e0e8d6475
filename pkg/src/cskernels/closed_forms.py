"""Registry of exact closed forms for profiles and spectral densities.

Each entry couples a vectorised formula with the printed expression it
implements.  Profile forms are exact on [0, 1]: the polynomial ones to a few
ulp, the square-root/log ones to ~1e-15 absolute in double arithmetic.  Near
the support edge the two branches of a square-root/log form are O(1) and
cancel to the tiny profile value, so those entries switch to double-double
evaluation above r = 0.9 and stay accurate in the relative sense up to r = 1.

Spectrum forms are rational-oscillatory expressions whose floating-point
evaluation loses relative accuracy like eps * r**-p as r -> 0, because the
individual terms blow up while the value stays bounded.  ``min_r`` records
the radius above which an entry is still good to ~1e-12 relative; the
spectral evaluator only consults the registry beyond that radius, since the
power series is exact in double precision exactly where the closed form is
not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _dd
from .errors import NotAvailable

__all__ = [
    "ClosedForm",
    "profile_closed_form",
    "spectrum_closed_form",
    "list_profile_forms",
    "list_spectrum_forms",
]


@dataclass(frozen=True)
class ClosedForm:
    key: tuple
    label: str
    min_r: float
    fn: Callable[[np.ndarray], np.ndarray]

    def __call__(self, r) -> np.ndarray:
        r = np.abs(np.asarray(r, dtype=float))
        return self.fn(r)


def _poly(r: np.ndarray, coeffs) -> np.ndarray:
    out = np.full_like(r, float(coeffs[-1]))
    for c in reversed(coeffs[:-1]):
        out = out * r + c
    return out


def _pow_form(power: float, coeffs) -> Callable[[np.ndarray], np.ndarray]:
    def fn(r: np.ndarray) -> np.ndarray:
        base = np.clip(1.0 - r, 0.0, None)
        return np.where(r < 1.0, base ** power * _poly(r, coeffs), 0.0)

    return fn


def _log_atom(r: np.ndarray) -> np.ndarray:
    # log((1 + sqrt(1-r^2)) / r), the half-argument log that pairs with the
    # sqrt atom in the even-dimension profile forms
    s = np.sqrt(np.clip((1.0 - r) * (1.0 + r), 0.0, None))
    with np.errstate(divide="ignore"):
        return np.where(r > 0.0, np.log((1.0 + s) / np.where(r > 0.0, r, 1.0)), np.inf)


def _dd_poly(r: float, coeffs) -> tuple[float, float]:
    ah, al = float(coeffs[-1]), 0.0
    for c in reversed(coeffs[:-1]):
        ah, al = _dd.dd_mul_d(ah, al, r)
        ah, al = _dd.dd_add(ah, al, float(c), 0.0)
    return ah, al


def _dd_atanh_small(xh: float, xl: float) -> tuple[float, float]:
    # odd series x + x^3/3 + x^5/5 + ...; callers keep |x| < 0.5
    x2h, x2l = _dd.dd_mul(xh, xl, xh, xl)
    th, tl = xh, xl
    sh, sl = xh, xl
    k = 1
    while True:
        k += 2
        th, tl = _dd.dd_mul(th, tl, x2h, x2l)
        ch, cl = _dd.dd_div_d(th, tl, float(k))
        sh, sl = _dd.dd_add(sh, sl, ch, cl)
        if abs(ch) <= 1e-34 * abs(sh) or k > 201:
            return sh, sl


def _sqrt_log_edge(r: float, sqrt_coeffs, log_coeffs, scale: float) -> float:
    # double-double evaluation for r near 1, where the printed form's two
    # O(1) branches cancel down to the profile value; r*r and 1 - r*r are
    # exact in a double-double, and log((1+s)/r) with s = sqrt(1-r^2) is
    # atanh(s), whose series has no cancellation
    ph, pl = _dd.two_prod(r, r)
    xh, xl = _dd.dd_add(1.0, 0.0, -ph, -pl)
    if not xh > 0.0:
        return 0.0
    sh, sl = _dd.dd_sqrt(xh, xl)
    ah, al = _dd_atanh_small(sh, sl)
    t1h, t1l = _dd.dd_mul(*_dd_poly(r, sqrt_coeffs), sh, sl)
    t2h, t2l = _dd.dd_mul(*_dd_poly(r, log_coeffs), ah, al)
    vh, vl = _dd.dd_add(t1h, t1l, t2h, t2l)
    return scale * (vh + vl)


def _sqrt_log_form(sqrt_coeffs, log_coeffs, scale=1.0):
    """scale * (poly_s(r) sqrt(1-r^2) + poly_l(r) log((1+sqrt(1-r^2))/r))."""

    def fn(r: np.ndarray) -> np.ndarray:
        shape = np.shape(r)
        r = np.atleast_1d(np.asarray(r, dtype=float)).ravel()
        s = np.sqrt(np.clip((1.0 - r) * (1.0 + r), 0.0, None))
        inside = r < 1.0
        val = _poly(r, sqrt_coeffs) * s
        logpart = _poly(r, log_coeffs)
        # the log coefficient polynomials all vanish at r = 0 at least
        # quadratically, so the r -> 0 limit of the product is 0
        lat = _log_atom(np.where(r > 0.0, r, 0.5))
        val = val + np.where(r > 0.0, logpart * lat, 0.0)
        out = np.where(inside, scale * val, 0.0)
        for i in np.flatnonzero(inside & (r > 0.85)):
            out[i] = _sqrt_log_edge(float(r[i]), sqrt_coeffs, log_coeffs, scale)
        return out.reshape(shape)

    return fn


_PHI_FORMS: dict[tuple[int, float], ClosedForm] = {}
_PSI_FORMS: dict[tuple[int, float], ClosedForm] = {}
_SPECTRUM_FORMS: dict[tuple, ClosedForm] = {}


def _add_phi(d, delta, label, fn):
    key = (int(d), float(delta))
    _PHI_FORMS[key] = ClosedForm(("phi",) + key, label, 0.0, fn)


def _add_psi(d, delta, label, fn):
    key = (int(d), float(delta))
    _PSI_FORMS[key] = ClosedForm(("psi",) + key, label, 0.0, fn)


_add_phi(1, 2.0, "(1-r)^3 (1+3r)", _pow_form(3.0, [1.0, 3.0]))
_add_phi(3, 2.0, "(1-r)^2", _pow_form(2.0, [1.0]))
_add_phi(2, 1.5, "(1-r)^(3/2)", _pow_form(1.5, [1.0]))
_add_phi(1, 3.0, "(1-r)^5 (1+5r+8r^2)", _pow_form(5.0, [1.0, 5.0, 8.0]))
_add_phi(3, 3.0, "(1-r)^4 (1+4r)", _pow_form(4.0, [1.0, 4.0]))
_add_phi(
    2,
    2.0,
    "(1+2r^2) sqrt(1-r^2) - 3r^2 log((1+sqrt(1-r^2))/r)",
    _sqrt_log_form([1.0, 0.0, 2.0], [0.0, 0.0, -3.0]),
)
_add_phi(
    2,
    3.0,
    "[(4-28r^2-81r^4) sqrt(1-r^2) + 15r^4 (6+r^2) log((1+sqrt(1-r^2))/r)] / 4",
    _sqrt_log_form(
        [4.0, 0.0, -28.0, 0.0, -81.0], [0.0, 0.0, 0.0, 0.0, 90.0, 0.0, 15.0], 0.25
    ),
)

_add_psi(1, 1.0, "(1-r)^2", _pow_form(2.0, [1.0]))
_add_psi(2, 1.5, "(1-r)^3", _pow_form(3.0, [1.0]))
_add_psi(3, 2.0, "(1-r)^4", _pow_form(4.0, [1.0]))
_add_psi(1, 2.0, "(1-r)^5 (1+5r)", _pow_form(5.0, [1.0, 5.0]))
_add_psi(1, 3.0, "(1-r)^8 (1+8r+21r^2)", _pow_form(8.0, [1.0, 8.0, 21.0]))
_add_psi(2, 2.5, "(1-r)^6 (1+6r)", _pow_form(6.0, [1.0, 6.0]))
_add_psi(
    2, 3.5, "(1-r)^9 (3+27r+80r^2) / 3", _pow_form(9.0, [1.0, 9.0, 80.0 / 3.0])
)
_add_psi(
    2,
    4.5,
    "(1-r)^12 (1+12r+57r^2+112r^3)",
    _pow_form(12.0, [1.0, 12.0, 57.0, 112.0]),
)
_add_psi(3, 3.0, "(1-r)^7 (1+7r)", _pow_form(7.0, [1.0, 7.0]))
_add_psi(3, 4.0, "(1-r)^10 (1+10r+33r^2)", _pow_form(10.0, [1.0, 10.0, 33.0]))
_add_psi(
    1,
    1.5,
    "[(2+13r^2) sqrt(1-r^2) - 3r^2 (4+r^2) log((1+sqrt(1-r^2))/r)] / 2",
    _sqrt_log_form([2.0, 0.0, 13.0], [0.0, 0.0, -12.0, 0.0, -3.0], 0.5),
)


def _spectrum_fn(terms, inv_power):
    """Sum of trig/1 atoms times r-polynomials, all over r**inv_power.

    ``terms`` is a list of (atom, ascending coeffs of the numerator
    polynomial in r).  Values at r = 0 are defined by the normalization
    (every registered spectrum equals 1 there), but callers never need them:
    min_r keeps the registry out of the cancellation zone.
    """

    atoms = {"one": lambda r: 1.0, "sin": np.sin, "cos": np.cos}

    def fn(r: np.ndarray) -> np.ndarray:
        num = np.zeros_like(r)
        for atom, coeffs in terms:
            num = num + atoms[atom](r) * _poly(r, coeffs)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(r > 0.0, num / np.where(r > 0.0, r, 1.0) ** inv_power, 1.0)

    return fn


def _add_spectrum(key, label, min_r, terms, inv_power):
    _SPECTRUM_FORMS[key] = ClosedForm(key, label, min_r, _spectrum_fn(terms, inv_power))


_add_spectrum(
    ("w", 2.0),
    "(120 r + 60 r cos r - 180 sin r) / r^5",
    1.0,
    [("one", [0.0, 120.0]), ("cos", [0.0, 60.0]), ("sin", [-180.0])],
    5,
)
_add_spectrum(
    ("q", 2.0),
    "840 (r^3 - 12 r + 15 sin r - 3 r cos r) / r^7",
    1.5,
    [
        ("one", [0.0, -10080.0, 0.0, 840.0]),
        ("sin", [12600.0]),
        ("cos", [0.0, -2520.0]),
    ],
    7,
)
_add_spectrum(
    ("askey", 1, 2.0),
    "6 (r - sin r) / r^3",
    0.05,
    [("one", [0.0, 6.0]), ("sin", [-6.0])],
    3,
)
_add_spectrum(
    ("askey", 1, 3.0),
    "(12 r^2 - 24 + 24 cos r) / r^4",
    0.3,
    [("one", [-24.0, 0.0, 12.0]), ("cos", [24.0])],
    4,
)
_add_spectrum(
    ("askey", 3, 2.0),
    "(120 r + 60 r cos r - 180 sin r) / r^5",
    1.0,
    [("one", [0.0, 120.0]), ("cos", [0.0, 60.0]), ("sin", [-180.0])],
    5,
)


def profile_closed_form(kind: str, d: int, delta: float) -> ClosedForm:
    """Closed form of a profile, or NotAvailable.

    ``kind`` is ``"phi"`` (first family) or ``"psi"`` (second family).
    """
    table = {"phi": _PHI_FORMS, "psi": _PSI_FORMS}.get(kind)
    if table is None:
        raise NotAvailable(f"unknown profile kind {kind!r}")
    try:
        return table[(int(d), float(delta))]
    except KeyError:
        raise NotAvailable(
            f"no closed form registered for {kind} profile d={d}, delta={delta}"
        ) from None


def spectrum_closed_form(key: tuple) -> ClosedForm:
    """Closed form of a spectral density by registry key.

    Keys: ``("w", delta)``, ``("q", delta)``, ``("askey", d, alpha)``.
    """
    try:
        return _SPECTRUM_FORMS[key]
    except KeyError:
        raise NotAvailable(f"no closed form registered for spectrum key {key}") from None


def list_profile_forms() -> list[tuple]:
    return sorted([cf.key for cf in _PHI_FORMS.values()]
                  + [cf.key for cf in _PSI_FORMS.values()])


def list_spectrum_forms() -> list[tuple]:
    return sorted(_SPECTRUM_FORMS.keys(), key=str)
