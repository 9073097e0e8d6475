"""Timing comparison between the pure-Python and compiled backends.

Run from the repository root after installing:

    python3 benchmarks/bench_backends.py

Each case times one of the hot series kernels through both backends and
prints the per-call cost and the speedup. The compiled module is optional;
without it only the pure column appears.
"""

import timeit

import numpy as np

from cskernels import _ref

try:
    from cskernels import _fast
except ImportError:
    _fast = None


def _per_call(fn, number):
    total = timeit.timeit(fn, number=number)
    return total / number


def bench(label, make_call, number):
    pure = _per_call(make_call(_ref), number)
    line = f"{label:<42} pure {pure * 1e6:9.2f} us"
    if _fast is not None:
        fast = _per_call(make_call(_fast), number)
        line += f"   compiled {fast * 1e6:9.2f} us   speedup {pure / fast:6.1f}x"
    print(line)


def main():
    rng = np.random.default_rng(7)
    grid = rng.uniform(0.0, 400.0, size=2000)

    print(f"backends available: pure{' + compiled' if _fast is not None else ' only'}")
    print()
    bench(
        "omega series branch (lam=2.5, t=8)",
        lambda mod: lambda: mod.omega(2.5, 8.0),
        2000,
    )
    bench(
        "omega series at the seam (lam=2.5, t=11.9)",
        lambda mod: lambda: mod.omega(2.5, 11.9),
        2000,
    )
    bench(
        "omega half-integer recurrence (lam=9.5, t=60)",
        lambda mod: lambda: mod.omega(9.5, 60.0),
        20000,
    )
    bench(
        "omega Hankel branch (lam=2.3, t=300)",
        lambda mod: lambda: mod.omega(2.3, 300.0),
        20000,
    )
    bench(
        "omega_vec, 2000 mixed arguments",
        lambda mod: lambda: mod.omega_vec(2.5, grid),
        20,
    )
    bench(
        "hyp1f2 mid-range cancellation (x=30)",
        lambda mod: lambda: mod.hyp1f2_series(2.0, 3.0, 3.5, 30.0),
        500,
    )
    bench(
        "hyp2f3 mid-range (x=20)",
        lambda mod: lambda: mod.hyp2f3_series(2.0, 2.5, 3.0, 3.25, 3.75, 20.0),
        500,
    )


if __name__ == "__main__":
    main()
