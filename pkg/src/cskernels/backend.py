"""Numerical backend selection.

Two interchangeable implementations of the series/asymptotic core exist: the
pure-Python one in ``_ref`` and an optional Cython extension ``_fast`` built
from ``_fast.pyx``.  The extension is preferred when importable.  Set the
environment variable ``CSKERNELS_BACKEND`` to ``pure`` or ``compiled`` to
force a choice; forcing ``compiled`` raises if the extension is missing
instead of silently degrading.

Both backends expose the same six callables re-exported here; the test suite
cross-checks them against each other on a dense parameter grid.
"""

from __future__ import annotations

import os

from . import _ref
from .errors import ParameterOutOfRange

_ENV_VAR = "CSKERNELS_BACKEND"


def _load():
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice not in ("", "pure", "compiled"):
        raise ParameterOutOfRange(
            f"{_ENV_VAR}={choice!r}: valid values are 'pure' and 'compiled'"
        )
    if choice == "pure":
        return _ref
    try:
        from . import _fast  # type: ignore[attr-defined]
        return _fast
    except ImportError:
        if choice == "compiled":
            raise ParameterOutOfRange(
                f"{_ENV_VAR}=compiled but the extension module is not importable; "
                "rebuild with 'pip install -e .' or drop the override"
            ) from None
        return _ref


_core = _load()

BACKEND: str = _core.NAME

omega = _core.omega
omega_vec = _core.omega_vec
omega_half_integer = _core.omega_half_integer
bessel_j = _core.bessel_j
hyp1f2_series = _core.hyp1f2_series
hyp2f3_series = _core.hyp2f3_series


def available_backends() -> tuple[str, ...]:
    """Names of the backends importable in this environment."""
    names = ["pure"]
    try:
        from . import _fast  # noqa: F401
        names.append("compiled")
    except ImportError:
        pass
    return tuple(names)
