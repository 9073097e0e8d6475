"""Pure-Python numerical backend.

Evaluates the normalized oscillatory kernel

    omega_lam(t) = Gamma(lam + 1) * (t/2)**(-lam) * J_lam(t)
                 = 0F1(lam + 1; -t**2 / 4),

which reduces to cos(t) at lam = -1/2 and sin(t)/t at lam = +1/2, together
with compensated power series for the generalized hypergeometric functions
1F2 and 2F3.  All series run in double-double arithmetic with divisors held
as error-free two-sums, so the dominant rounding error is term cancellation
at the 2**-104 level.  That is what keeps the mid-range seam usable: around
t = 20..60 individual terms peak at 1e7..1e17 while the result is O(1), and
a plain compensated float sum would lose 6..12 digits there.

Branch selection per (order, argument):

* ``t <= max(12, 2*lam)``: the power series, always;
* beyond that, half-integer orders (lam = n + 1/2, n <= 30) use the exact
  upward recurrence seeded by cos/sin, which is stable for t > 2*lam;
* other orders use the Hankel large-argument expansion once its smallest
  term predicts ~1e-12 absolute accuracy, falling back to the series when a
  Stirling estimate of the double-double cancellation error beats that.

The compiled backend (``_fast``) reimplements exactly these algorithms; see
``backend`` for how one of the two gets picked at import time.
"""

from __future__ import annotations

import math

import numpy as np

from ._dd import (
    DD_EPS,
    dd_add,
    dd_add_v,
    dd_div,
    dd_div_d,
    dd_div_d_v,
    dd_div_v,
    dd_mul,
    dd_mul_v,
    two_prod,
    two_prod_v,
    two_sum,
)

NAME = "pure"

_PI_2 = math.pi / 2.0
_PI_4 = math.pi / 4.0
_LN_DD = math.log(DD_EPS)
_HALF_ORDER_MAX = 30
_SERIES_CAP = 900

__all__ = [
    "NAME",
    "omega",
    "omega_vec",
    "omega_half_integer",
    "bessel_j",
    "hyp1f2_series",
    "hyp2f3_series",
]


def _half_index(lam: float) -> int | None:
    """Integer n with lam == n + 1/2 exactly, if within the recurrence range."""
    n = round(lam - 0.5)
    if lam == n + 0.5 and -1 <= n <= _HALF_ORDER_MAX:
        return int(n)
    return None


def _lg_stirling(x):
    # log Gamma with one Bernoulli correction; branch prediction only,
    # so ~1e-2 absolute error at x = 1/2 is irrelevant.
    return (x - 0.5) * np.log(x) - x + 0.9189385332046727 + 1.0 / (12.0 * x)


def _series_err_ln(lam, t):
    """ln of the predicted double-double cancellation error of the series."""
    ks = 0.5 * (-lam + np.sqrt(lam * lam + t * t))
    lnmax = (
        2.0 * ks * np.log(0.5 * t)
        + _lg_stirling(lam + 1.0)
        - _lg_stirling(ks + 1.0)
        - _lg_stirling(lam + 1.0 + ks)
    )
    return lnmax + np.log(ks + 25.0) + _LN_DD


def _omega_series(lam: float, t: float) -> float:
    qh, ql = two_prod(t, t)
    qh *= -0.25
    ql *= -0.25
    lam1 = lam + 1.0
    th, tl = 1.0, 0.0
    sh, sl = 1.0, 0.0
    below = 0
    for k in range(_SERIES_CAP):
        fk = float(k)
        th, tl = dd_mul(th, tl, qh, ql)
        th, tl = dd_div_d(th, tl, fk + 1.0)
        dh, dl = two_sum(lam1, fk)
        th, tl = dd_div(th, tl, dh, dl)
        sh, sl = dd_add(sh, sl, th, tl)
        if abs(th) <= 1e-17 * abs(sh):
            below += 1
            if below >= 2:
                break
        else:
            below = 0
    return sh + sl


def _omega_half(n: int, t: float) -> float:
    # upward recurrence on cos/sin; caller guarantees t > 2*lam
    if n == -1:
        return math.cos(t)
    prev = math.cos(t)
    cur = math.sin(t) / t
    lam = 0.5
    tt = t * t
    for _ in range(n):
        prev, cur = cur, 4.0 * lam * (lam + 1.0) / tt * (cur - prev)
        lam += 1.0
    return cur


def _hankel_pq(lam: float, t: float) -> tuple[float, float, float]:
    """P and Q sums of the large-argument expansion, plus the first
    neglected scaled term as an error estimate."""
    mu = 4.0 * lam * lam
    p_sum = 1.0
    q_sum = 0.0
    ak = 1.0
    tj = 1.0
    prev = 1.0
    tail = 1.0
    for j in range(1, 41):
        ak *= (mu - (2.0 * j - 1.0) ** 2) / (8.0 * j)
        tj /= t
        sc = ak * tj
        if abs(sc) >= prev:
            tail = abs(sc)
            break
        sign = -1.0 if (j // 2) % 2 else 1.0
        if j % 2:
            q_sum += sign * sc
        else:
            p_sum += sign * sc
        prev = abs(sc)
        tail = prev
        if prev < 1e-18:
            break
    return p_sum, q_sum, tail


def _omega_amp(lam: float, t: float) -> float:
    return math.sqrt(2.0 / (math.pi * t)) * math.exp(
        math.lgamma(lam + 1.0) - lam * math.log(0.5 * t)
    )


def omega(lam: float, t: float) -> float:
    t = abs(float(t))
    if t == 0.0:
        return 1.0
    if t <= max(12.0, 2.0 * lam):
        return _omega_series(lam, t)
    n = _half_index(lam)
    if n is not None:
        return _omega_half(n, t)
    p_sum, q_sum, tail = _hankel_pq(lam, t)
    amp = _omega_amp(lam, t)
    est_asym = tail * amp
    if est_asym > 1e-12 and _series_err_ln(lam, t) < math.log(est_asym):
        return _omega_series(lam, t)
    w = t - lam * _PI_2 - _PI_4
    return amp * (p_sum * math.cos(w) - q_sum * math.sin(w))


def omega_half_integer(n: int, t: float) -> float:
    t = abs(float(t))
    lam = n + 0.5
    if t == 0.0:
        return 1.0
    if t <= max(12.0, 2.0 * lam):
        return _omega_series(lam, t)
    return _omega_half(n, t)


def bessel_j(lam: float, t: float) -> float:
    t = abs(float(t))
    if t == 0.0:
        if lam == 0.0:
            return 1.0
        return 0.0 if lam > 0.0 else math.inf
    scale = math.exp(lam * math.log(0.5 * t) - math.lgamma(lam + 1.0))
    return omega(lam, t) * scale


# ---------------------------------------------------------------------------
# vectorised order-lam kernel
# ---------------------------------------------------------------------------

def _omega_series_vec(lam: float, tv: np.ndarray) -> np.ndarray:
    qh, ql = two_prod_v(tv, tv)
    qh = qh * -0.25
    ql = ql * -0.25
    lam1 = lam + 1.0
    th = np.ones_like(tv)
    tl = np.zeros_like(tv)
    sh = np.ones_like(tv)
    sl = np.zeros_like(tv)
    below = 0
    for k in range(_SERIES_CAP):
        fk = float(k)
        th, tl = dd_mul_v(th, tl, qh, ql)
        th, tl = dd_div_d_v(th, tl, fk + 1.0)
        dh, dl = two_sum(lam1, fk)
        th, tl = dd_div_v(th, tl, dh, dl)
        sh, sl = dd_add_v(sh, sl, th, tl)
        if np.all(np.abs(th) <= 1e-17 * np.abs(sh)):
            below += 1
            if below >= 2:
                break
        else:
            below = 0
    return sh + sl


def _omega_half_vec(n: int, tv: np.ndarray) -> np.ndarray:
    if n == -1:
        return np.cos(tv)
    prev = np.cos(tv)
    cur = np.sin(tv) / tv
    lam = 0.5
    tt = tv * tv
    for _ in range(n):
        prev, cur = cur, 4.0 * lam * (lam + 1.0) / tt * (cur - prev)
        lam += 1.0
    return cur


def _hankel_pq_vec(lam: float, tv: np.ndarray):
    mu = 4.0 * lam * lam
    p_sum = np.ones_like(tv)
    q_sum = np.zeros_like(tv)
    tail = np.ones_like(tv)
    prev = np.ones_like(tv)
    active = np.ones(tv.shape, dtype=bool)
    ak = 1.0
    tj = np.ones_like(tv)
    for j in range(1, 41):
        ak *= (mu - (2.0 * j - 1.0) ** 2) / (8.0 * j)
        tj = tj / tv
        sc = ak * tj
        asc = np.abs(sc)
        worse = active & (asc >= prev)
        tail[worse] = asc[worse]
        active &= ~worse
        if not active.any():
            break
        sign = -1.0 if (j // 2) % 2 else 1.0
        contrib = np.where(active, sign * sc, 0.0)
        if j % 2:
            q_sum += contrib
        else:
            p_sum += contrib
        tail[active] = asc[active]
        prev = asc
        done = active & (asc < 1e-18)
        active &= ~done
        if not active.any():
            break
    return p_sum, q_sum, tail


def _omega_big_vec(lam: float, tv: np.ndarray) -> np.ndarray:
    p_sum, q_sum, tail = _hankel_pq_vec(lam, tv)
    amp = np.sqrt(2.0 / (math.pi * tv)) * np.exp(
        math.lgamma(lam + 1.0) - lam * np.log(0.5 * tv)
    )
    w = tv - lam * _PI_2 - _PI_4
    res = amp * (p_sum * np.cos(w) - q_sum * np.sin(w))
    est = tail * amp
    bad = est > 1e-12
    if bad.any():
        use_series = _series_err_ln(lam, tv[bad]) < np.log(est[bad])
        if use_series.any():
            idx = np.flatnonzero(bad)[use_series]
            res[idx] = _omega_series_vec(lam, tv[idx])
    return res


def omega_vec(lam: float, t) -> np.ndarray:
    tv = np.abs(np.asarray(t, dtype=np.float64))
    scalar_shape = tv.shape
    tv = np.atleast_1d(tv).ravel()
    out = np.ones_like(tv)
    pos = tv > 0.0
    small = pos & (tv <= max(12.0, 2.0 * lam))
    if small.any():
        out[small] = _omega_series_vec(lam, tv[small])
    big = pos & ~small
    if big.any():
        n = _half_index(lam)
        if n is not None:
            out[big] = _omega_half_vec(n, tv[big])
        else:
            out[big] = _omega_big_vec(lam, tv[big])
    return out.reshape(scalar_shape)


# ---------------------------------------------------------------------------
# generalized hypergeometric series
# ---------------------------------------------------------------------------

def hyp1f2_series(
    a: float, b1: float, b2: float, x: float, max_terms: int = 5000
) -> tuple[float, int, float]:
    """Compensated partial sum of 1F2(a; b1, b2; -x**2/4).

    Returns ``(value, terms_used, abs_error_estimate)``.  The estimate adds
    the last term to the accumulated double-double cancellation budget; a
    nan value with an infinite estimate signals that terms overflowed the
    admissible range and the caller must use another representation.
    """
    zh, zl = two_prod(x, x)
    zh *= -0.25
    zl *= -0.25
    th, tl = 1.0, 0.0
    sh, sl = 1.0, 0.0
    mx = 1.0
    at = 0.0
    below = 0
    k = 0
    for k in range(max_terms):
        fk = float(k)
        th, tl = dd_mul(th, tl, zh, zl)
        nh, nl = two_sum(a, fk)
        th, tl = dd_mul(th, tl, nh, nl)
        th, tl = dd_div_d(th, tl, fk + 1.0)
        dh, dl = two_sum(b1, fk)
        th, tl = dd_div(th, tl, dh, dl)
        dh, dl = two_sum(b2, fk)
        th, tl = dd_div(th, tl, dh, dl)
        sh, sl = dd_add(sh, sl, th, tl)
        at = abs(th)
        if at > mx:
            mx = at
        if at > 1e290:
            return math.nan, k + 1, math.inf
        if at <= 1e-16 * abs(sh):
            below += 1
            if below >= 2:
                break
        else:
            below = 0
    terms = k + 1
    err = at + (terms + 20.0) * DD_EPS * mx + 2e-16 * abs(sh)
    return sh + sl, terms, err


def hyp2f3_series(
    a1: float,
    a2: float,
    b1: float,
    b2: float,
    b3: float,
    x: float,
    max_terms: int = 5000,
) -> tuple[float, int, float]:
    """Compensated partial sum of 2F3(a1, a2; b1, b2, b3; -x**2/4)."""
    zh, zl = two_prod(x, x)
    zh *= -0.25
    zl *= -0.25
    th, tl = 1.0, 0.0
    sh, sl = 1.0, 0.0
    mx = 1.0
    at = 0.0
    below = 0
    k = 0
    for k in range(max_terms):
        fk = float(k)
        th, tl = dd_mul(th, tl, zh, zl)
        nh, nl = two_sum(a1, fk)
        th, tl = dd_mul(th, tl, nh, nl)
        nh, nl = two_sum(a2, fk)
        th, tl = dd_mul(th, tl, nh, nl)
        th, tl = dd_div_d(th, tl, fk + 1.0)
        dh, dl = two_sum(b1, fk)
        th, tl = dd_div(th, tl, dh, dl)
        dh, dl = two_sum(b2, fk)
        th, tl = dd_div(th, tl, dh, dl)
        dh, dl = two_sum(b3, fk)
        th, tl = dd_div(th, tl, dh, dl)
        sh, sl = dd_add(sh, sl, th, tl)
        at = abs(th)
        if at > mx:
            mx = at
        if at > 1e290:
            return math.nan, k + 1, math.inf
        if at <= 1e-16 * abs(sh):
            below += 1
            if below >= 2:
                break
        else:
            below = 0
    terms = k + 1
    err = at + (terms + 20.0) * DD_EPS * mx + 2e-16 * abs(sh)
    return sh + sl, terms, err
