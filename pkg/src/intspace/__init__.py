"""Interval spacings ``D_{i,w} = T_i - T_{i-w}`` of order statistics.

Closed-form densities and moments for uniform, exponential and logistic
variates, a quadrature oracle for any model, seeded simulation, and the
spectral and lag-covariance views of interval spacing as a moving sum.
"""

from .closedform import IntervalSpec, MomentResult, density, mean, moments, variance
from .errors import (
    ContractError,
    ConvergenceError,
    DomainError,
    IngestionError,
    IntSpaceError,
    ParameterError,
    QuadratureError,
)
from .profile import compute_profile, load_csv
from .simulate import SimulationConfig, interval_spacings, run_simulation
from .spectral import autocovariance, filter_equivalence, kernel_response
from .variates import Exponential, Logistic, Uniform, parse_model

__version__ = "0.1.0"

__all__ = [
    "ContractError",
    "ConvergenceError",
    "DomainError",
    "Exponential",
    "IngestionError",
    "IntSpaceError",
    "IntervalSpec",
    "Logistic",
    "MomentResult",
    "ParameterError",
    "QuadratureError",
    "SimulationConfig",
    "Uniform",
    "autocovariance",
    "compute_profile",
    "density",
    "filter_equivalence",
    "interval_spacings",
    "kernel_response",
    "load_csv",
    "mean",
    "moments",
    "parse_model",
    "run_simulation",
    "variance",
]
