"""
Spatial correlation matrix container with a lazily computed square-root factor
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from loguru import logger

from errors import FactorizationError

_FACTOR_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Real symmetric correlation matrix R with unit diagonal.

    ``eigen_factor`` is S = V diag(sqrt(max(lambda, 0))) so that S S^T
    reproduces R. The sinc kernel is rank deficient for sub-half-wavelength
    spacing, so Cholesky is not an option.
    """

    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(
                f"Correlation matrix must be square, got shape {entries.shape}"
            )
        if not np.all(np.isfinite(entries)):
            raise ValueError("Correlation matrix has non-finite entries")
        if not np.allclose(np.diag(entries), 1.0, atol=1e-12):
            raise ValueError("Correlation matrix must have a unit diagonal")
        if not np.allclose(entries, entries.T, atol=1e-12):
            raise ValueError("Correlation matrix must be symmetric")
        if np.any(np.abs(entries) > 1.0 + 1e-12):
            raise ValueError("Correlation entries must lie in [-1, 1]")
        entries = np.clip(0.5 * (entries + entries.T), -1.0, 1.0)
        np.fill_diagonal(entries, 1.0)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls, n: int) -> "CorrelationMatrix":
        return cls(np.eye(n))

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self.entries, np.eye(self.n)))

    @cached_property
    def eigen_factor(self) -> np.ndarray:
        if self.is_identity:
            return np.eye(self.n)

        try:
            eigenvalues, eigenvectors = np.linalg.eigh(self.entries)
        except np.linalg.LinAlgError as e:
            raise FactorizationError(
                f"Eigen-decomposition did not converge: {e}"
            ) from e

        clamped = int(np.count_nonzero(eigenvalues < 0))
        if clamped:
            logger.debug(
                f"Clamped {clamped} negative eigenvalues "
                f"of an {self.n}x{self.n} correlation matrix"
            )
        factor = eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))

        error = np.max(np.abs(factor @ factor.T - self.entries))
        if error > _FACTOR_TOLERANCE:
            logger.warning(f"Correlation factor reproduces R only to {error:.3e}")
        factor.setflags(write=False)
        return factor

    def rank(self, tol: float = 1e-10) -> int:
        return int(np.count_nonzero(np.linalg.eigvalsh(self.entries) > tol))
