"""
Exception hierarchy shared by the simulation, fitting and analysis packages
"""

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from mixture.models import EmTrace


class RisEmError(Exception):
    """Base class for all errors raised by this project"""


class ConfigError(RisEmError, ValueError):
    """Invalid scenario, experiment spec or preset override"""


class NumericalError(RisEmError, ArithmeticError):
    """A numerical procedure could not produce a valid result"""


class FactorizationError(NumericalError):
    """Eigen-decomposition of a correlation matrix failed"""


class DegenerateSampleError(NumericalError):
    """Samples are constant or negative where an estimator needs spread"""


class ZeroVarianceReferenceError(NumericalError):
    """NMSE reference curve has no variance"""


class ComponentCollapseError(NumericalError):
    """A mixture component lost (almost) all responsibility mass"""

    def __init__(self, message: str, trace: Optional["EmTrace"] = None) -> None:
        super().__init__(message)
        self.trace = trace


class StageError(RisEmError):
    """Failure inside one stage of an experiment run"""

    def __init__(self, stage: str, cause: BaseException) -> None:
        super().__init__(f"{stage} stage failed: {cause}")
        self.stage = stage
        self.cause = cause
