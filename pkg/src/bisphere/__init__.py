"""Heat loss of two spheres held at constant temperature, via bispherical series."""

from .errors import (
    BisphereError,
    BracketError,
    ConvergenceError,
    DegenerateConfigurationError,
    DomainError,
    IllConditionedError,
    UnsupportedConfigurationError,
)
from .geometry import BisphericalConfig, SphereParams, normalize, to_bispherical
from .heatloss import (
    HeatLossResult,
    Method,
    SeriesOptions,
    heat_loss,
    q1_contact,
    q1_slope_at_contact,
)
from .analysis import critical_ratio, min_distance, scan, slope_sign

__version__ = "0.1.0"

__all__ = [
    "BisphereError",
    "BisphericalConfig",
    "BracketError",
    "ConvergenceError",
    "DegenerateConfigurationError",
    "DomainError",
    "HeatLossResult",
    "IllConditionedError",
    "Method",
    "SeriesOptions",
    "SphereParams",
    "UnsupportedConfigurationError",
    "critical_ratio",
    "heat_loss",
    "min_distance",
    "normalize",
    "q1_contact",
    "q1_slope_at_contact",
    "scan",
    "slope_sign",
    "to_bispherical",
]
