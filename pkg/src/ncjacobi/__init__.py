"""Exact moments, Jacobi parameters and cumulants for classical, free, Boolean
and two-state free convolution semigroups, over the rationals."""

from ._kernels import BACKEND
from .convolve import convolve, dilate, power
from .errors import (
    AdmissibilityError,
    ArityError,
    DomainError,
    InsufficientDepthError,
    NCJacobiError,
    OrderMismatchError,
    PositivityWarning,
    SchemaError,
)
from .exact import PolynomialInT, Q, TruncatedSeries, format_rational, parse_rational, poly_fit_and_degree
from .measures import (
    CumulantVector,
    Flavor,
    JacobiParams,
    MeasurePair,
    MomentSequence,
    TwoStateCumulantVector,
    positivity_probe,
)
from .meixner import (
    HarnessParams,
    LimitKind,
    MeixnerParams,
    build_family,
    classical_meixner_jacobi,
    free_meixner_jacobi,
    two_state_meixner_pair,
)
from .transforms import (
    cumulants_to_moments,
    jacobi_to_moments,
    moments_to_cumulants,
    moments_to_jacobi,
    pair_to_two_state_cumulants,
    two_state_cumulants_to_tilde,
)
from .verify import classify_orbit, extract_lemma1_coefficients, identity_suite, run_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AdmissibilityError",
    "ArityError",
    "CumulantVector",
    "DomainError",
    "Flavor",
    "HarnessParams",
    "InsufficientDepthError",
    "JacobiParams",
    "LimitKind",
    "MeasurePair",
    "MeixnerParams",
    "MomentSequence",
    "NCJacobiError",
    "OrderMismatchError",
    "PolynomialInT",
    "PositivityWarning",
    "Q",
    "SchemaError",
    "TruncatedSeries",
    "TwoStateCumulantVector",
    "build_family",
    "classical_meixner_jacobi",
    "classify_orbit",
    "convolve",
    "cumulants_to_moments",
    "dilate",
    "extract_lemma1_coefficients",
    "format_rational",
    "free_meixner_jacobi",
    "identity_suite",
    "jacobi_to_moments",
    "moments_to_cumulants",
    "moments_to_jacobi",
    "pair_to_two_state_cumulants",
    "parse_rational",
    "poly_fit_and_degree",
    "positivity_probe",
    "power",
    "run_suite",
    "two_state_cumulants_to_tilde",
    "two_state_meixner_pair",
]
