"""Matrix means of positive definite matrices and executable checks of their inequalities."""

from .constants import ConstantsBundle, bundle, delta, kantorovich_mM, kantorovich_x, lower_bound_L
from .exceptions import DimensionMismatch, DomainError, HypothesisViolation, NumericFailure, SpecmeanError
from .linalg import SpectrumBounds, eigh, loewner_margin, power
from .means import (
    arithmetic_mean,
    geometric_mean,
    harmonic_mean,
    spectral_geometric_mean,
    spectral_residual,
)
from .suite import SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "ConstantsBundle",
    "bundle",
    "delta",
    "kantorovich_mM",
    "kantorovich_x",
    "lower_bound_L",
    "DimensionMismatch",
    "DomainError",
    "HypothesisViolation",
    "NumericFailure",
    "SpecmeanError",
    "SpectrumBounds",
    "eigh",
    "loewner_margin",
    "power",
    "arithmetic_mean",
    "geometric_mean",
    "harmonic_mean",
    "spectral_geometric_mean",
    "spectral_residual",
    "SuiteConfig",
    "run_suite",
]
