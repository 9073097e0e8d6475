"""Double-double building blocks for the pure-Python backend.

A double-double represents a value as an unevaluated sum ``hi + lo`` of two
floats with ``|lo| <= ulp(hi)/2``, giving roughly 32 significant digits.  The
primitives below are the classic error-free transformations (Knuth two-sum,
Dekker split/product) plus the handful of composite operations the series
kernels need.  Everything exists twice: scalar tuples for one-off evaluation
and elementwise numpy versions for the vectorised paths.  The formulas rely on
strict IEEE-754 evaluation order; numpy ufuncs honour that, so the two layers
agree to the last bit.

The compiled backend mirrors these routines in Cython using ``fma`` for the
product split; results agree with this module to ~1 ulp of the double-double.
"""

from __future__ import annotations

# 2**27 + 1, Dekker's splitter for IEEE doubles.
_SPLIT = 134217729.0

# Effective epsilon of a double-double value.
DD_EPS = 2.0 ** -104


def two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    c = _SPLIT * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLIT * b
    bhi = c - (c - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd_add(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    s, e = two_sum(xh, yh)
    e += xl + yl
    return quick_two_sum(s, e)


def dd_mul(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    p, e = two_prod(xh, yh)
    e += xh * yl + xl * yh
    return quick_two_sum(p, e)


def dd_mul_d(xh: float, xl: float, d: float) -> tuple[float, float]:
    p, e = two_prod(xh, d)
    e += xl * d
    return quick_two_sum(p, e)


def dd_div_d(xh: float, xl: float, d: float) -> tuple[float, float]:
    q = xh / d
    p, e = two_prod(q, d)
    r = ((xh - p) - e + xl) / d
    return quick_two_sum(q, r)


def dd_div(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    # full double-double divisor; two Newton-style corrections
    q1 = xh / yh
    ph, pl = dd_mul_d(yh, yl, q1)
    rh, rl = dd_add(xh, xl, -ph, -pl)
    q2 = rh / yh
    ph, pl = dd_mul_d(yh, yl, q2)
    rh, rl = dd_add(rh, rl, -ph, -pl)
    q3 = rh / yh
    q1, q2 = quick_two_sum(q1, q2)
    return dd_add(q1, q2, q3, 0.0)


def dd_sqrt(xh: float, xl: float) -> tuple[float, float]:
    # one Newton step from the double sqrt doubles the correct digits
    if xh == 0.0 and xl == 0.0:
        return 0.0, 0.0
    y = xh ** 0.5
    qh, ql = dd_div(xh, xl, y, 0.0)
    sh, sl = dd_add(y, 0.0, qh, ql)
    return 0.5 * sh, 0.5 * sl


# ---------------------------------------------------------------------------
# vector layer: identical algebra on ndarrays
# ---------------------------------------------------------------------------

def two_sum_v(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum_v(a, b):
    s = a + b
    return s, b - (s - a)


def two_prod_v(a, b):
    p = a * b
    c = _SPLIT * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLIT * b
    bhi = c - (c - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd_add_v(xh, xl, yh, yl):
    s, e = two_sum_v(xh, yh)
    e = e + (xl + yl)
    return quick_two_sum_v(s, e)


def dd_mul_v(xh, xl, yh, yl):
    p, e = two_prod_v(xh, yh)
    e = e + (xh * yl + xl * yh)
    return quick_two_sum_v(p, e)


def dd_div_d_v(xh, xl, d):
    q = xh / d
    p, e = two_prod_v(q, d)
    r = ((xh - p) - e + xl) / d
    return quick_two_sum_v(q, r)


def dd_mul_d_v(xh, xl, d):
    p, e = two_prod_v(xh, d)
    e = e + xl * d
    return quick_two_sum_v(p, e)


def dd_div_v(xh, xl, yh, yl):
    # divisor may be a scalar double-double broadcast over array numerators
    q1 = xh / yh
    ph, pl = two_prod_v(q1, yh)
    ph, pl = quick_two_sum_v(ph, pl + q1 * yl)
    rh, rl = dd_add_v(xh, xl, -ph, -pl)
    q2 = rh / yh
    ph, pl = two_prod_v(q2, yh)
    ph, pl = quick_two_sum_v(ph, pl + q2 * yl)
    rh, rl = dd_add_v(rh, rl, -ph, -pl)
    q3 = rh / yh
    q1, q2 = quick_two_sum_v(q1, q2)
    return dd_add_v(q1, q2, q3, 0.0)
