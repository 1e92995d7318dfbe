"""
Elementary random quantities: circular complex Gaussians and Von Mises phases
"""

from typing import Optional, Tuple, Union

import numpy as np

from .correlation import CorrelationMatrix
from .rng import RngStream

Shape = Union[int, Tuple[int, ...]]


def sample_standard_complex_gaussian(rng: RngStream, n: Shape) -> np.ndarray:
    """CN(0, 1) draws: real and imaginary parts independent with variance 1/2.

    ``n`` may be a count or a full shape; a zero count returns an empty array.
    """
    shape = (n,) if isinstance(n, (int, np.integer)) else tuple(n)
    if any(dim < 0 for dim in shape):
        raise ValueError(f"Sample shape must be non-negative, got {shape}")
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)
    return (real + 1j * imag) * np.sqrt(0.5)


def sample_correlated_complex_gaussian(
    rng: RngStream,
    correlation: CorrelationMatrix,
    scale: float,
    size: Optional[Shape] = None,
) -> np.ndarray:
    """CN(0, scale * R) vectors of length N, generated as sqrt(scale) * S z.

    With ``size`` the result has shape ``(*size, N)``; rows are independent.
    """
    if not scale > 0:
        raise ValueError(f"Power scale must be positive, got {scale}")

    factor = correlation.eigen_factor
    if size is None:
        batch: Tuple[int, ...] = ()
    elif isinstance(size, (int, np.integer)):
        batch = (int(size),)
    else:
        batch = tuple(size)
    z = sample_standard_complex_gaussian(rng, (*batch, correlation.n))
    if correlation.is_identity:
        return np.sqrt(scale) * z
    return np.sqrt(scale) * (z @ factor.T)


def sample_von_mises(rng: RngStream, kappa: float, n: Shape) -> np.ndarray:
    """Zero-mean Von Mises angles in (-pi, pi].

    numpy's generator implements the Best-Fisher rejection scheme and falls
    back to uniform phases for vanishing concentration.
    """
    if kappa < 0 or not np.isfinite(kappa):
        raise ValueError(
            f"Von Mises concentration must be finite and >= 0, got {kappa}"
        )
    shape = (n,) if isinstance(n, (int, np.integer)) else tuple(n)
    if kappa == 0:
        return np.pi - rng.uniform(0.0, 2.0 * np.pi, shape)
    theta = rng.generator.vonmises(0.0, kappa, shape)
    # numpy returns the closed interval [-pi, pi]
    return np.where(theta <= -np.pi, np.pi, theta)
