"""Compactly supported radial kernels for Sobolev spaces.

Three families of positive definite kernels on the unit ball of R^d with
exact rational-oscillatory spectral densities, the Hankel-Schoenberg
transform machinery connecting profile and spectrum, and an RKHS
interpolation layer with a verification harness.  See the README for the
command line interface.
"""

from .backend import BACKEND, available_backends
from .errors import (
    ConvergenceFailure,
    CSKernelsError,
    DecayTooSlow,
    DimensionMismatch,
    NotAvailable,
    ParameterOutOfRange,
    PositivityViolation,
    QuadratureNonconvergence,
    SingularGram,
)
from .kernels import (
    Family,
    KernelSpec,
    RadialProfile,
    Regime,
    Side,
    SpectralDensity,
    bessel_potential_g,
    closed_form,
    fourier_constant,
    kernel_eval,
    profile_askey,
    profile_phi,
    profile_psi,
    radial_profile,
    smooth_forward_weight,
    spectral_density,
    spectrum_lambda,
    spectrum_q,
    spectrum_w,
    surface_area,
    validate_spec,
    wendland_forward_weight,
)
from .transforms import (
    BinomialDensity,
    Integrand,
    OrderWalkProfile,
    OscillatoryIntegralConfig,
    as_integrand,
    hankel_schoenberg,
    inverse_transform,
    order_walk,
    poisson_omega,
    power_weighted,
    radial_fourier,
)
from .rkhs import (
    GramFactorization,
    Interpolant,
    NodeSet,
    TranslateSpectrum,
    eval_interpolant,
    factorize_gram,
    fit,
    gram,
    native_inner_product_1d,
    sobolev_equivalence_check,
    translate_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "available_backends",
    "__version__",
    "CSKernelsError",
    "ConvergenceFailure",
    "DecayTooSlow",
    "DimensionMismatch",
    "NotAvailable",
    "ParameterOutOfRange",
    "PositivityViolation",
    "QuadratureNonconvergence",
    "SingularGram",
    "Family",
    "KernelSpec",
    "RadialProfile",
    "Regime",
    "Side",
    "SpectralDensity",
    "bessel_potential_g",
    "closed_form",
    "fourier_constant",
    "kernel_eval",
    "profile_askey",
    "profile_phi",
    "profile_psi",
    "radial_profile",
    "smooth_forward_weight",
    "spectral_density",
    "spectrum_lambda",
    "spectrum_q",
    "spectrum_w",
    "surface_area",
    "validate_spec",
    "wendland_forward_weight",
    "BinomialDensity",
    "Integrand",
    "OrderWalkProfile",
    "OscillatoryIntegralConfig",
    "as_integrand",
    "hankel_schoenberg",
    "inverse_transform",
    "order_walk",
    "poisson_omega",
    "power_weighted",
    "radial_fourier",
    "GramFactorization",
    "Interpolant",
    "NodeSet",
    "TranslateSpectrum",
    "eval_interpolant",
    "factorize_gram",
    "fit",
    "gram",
    "native_inner_product_1d",
    "sobolev_equivalence_check",
    "translate_spectrum",
]
