from .correlation import CorrelationMatrix
from .generators import (
    sample_correlated_complex_gaussian,
    sample_standard_complex_gaussian,
    sample_von_mises,
)
from .rng import RngStream

__all__ = [
    "CorrelationMatrix",
    "RngStream",
    "sample_correlated_complex_gaussian",
    "sample_standard_complex_gaussian",
    "sample_von_mises",
]
