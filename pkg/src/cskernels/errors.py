"""Exception hierarchy.

Every error the library raises deliberately derives from :class:`CSKernelsError`
so callers can catch one base class.  The CLI maps subclasses to exit codes
(parameter problems -> 2, quadrature nonconvergence -> 3, linear algebra -> 4,
I/O -> 5); see ``cli.py``.
"""

from __future__ import annotations


class CSKernelsError(Exception):
    """Base class for all library errors."""


class ParameterOutOfRange(CSKernelsError, ValueError):
    """A parameter lies outside the admissible domain of its family."""


class DimensionMismatch(CSKernelsError, ValueError):
    """Point sets or vectors with incompatible shapes / dimensions."""


class DecayTooSlow(ParameterOutOfRange):
    """A spectral density decays too slowly for the requested inversion order."""


class ConvergenceFailure(CSKernelsError, RuntimeError):
    """A series did not reach its tolerance within the term budget."""


class QuadratureNonconvergence(CSKernelsError, RuntimeError):
    """An adaptive or accelerated quadrature failed to stabilise."""


class SingularGram(CSKernelsError, RuntimeError):
    """Cholesky factorisation of a kernel matrix failed.

    With distinct nodes and an admissible kernel the matrix is positive
    definite in exact arithmetic, so this signals either duplicate nodes or
    conditioning beyond double precision.
    """


class PositivityViolation(CSKernelsError, RuntimeError):
    """A quantity that must be strictly positive evaluated to <= 0."""


class NotAvailable(CSKernelsError, LookupError):
    """No closed form is registered for the requested parameters."""
