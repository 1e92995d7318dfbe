"""
Moment-matched Gamma approximation of the channel power h^2
"""

from typing import Sequence

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import gammainc

from channel import ChannelSampleSet
from errors import DegenerateSampleError

from .models import OutageCurve
from .outage import power_threshold


class GammaFit(BaseModel):
    """h^2 ~ Gamma(shape k, scale theta)"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    shape: float = Field(..., gt=0, description="k = mean^2 / var")
    scale: float = Field(..., gt=0, description="theta = var / mean")

    def outage(self, rho_db: float, r_th: "float | np.ndarray") -> "float | np.ndarray":
        """P(k, (2^R_th - 1) / (rho theta))"""
        op = gammainc(self.shape, power_threshold(rho_db, r_th) / self.scale)
        return float(op) if np.ndim(op) == 0 else op

    def curve(self, rho_db: float, rate_grid: Sequence[float]) -> OutageCurve:
        op = np.atleast_1d(self.outage(rho_db, np.asarray(rate_grid, dtype=float)))
        return OutageCurve(
            rate_grid=list(map(float, rate_grid)),
            op_values=np.maximum.accumulate(op).tolist(),
            method="gamma-mom",
        )


def gamma_mom_baseline(
    samples: "ChannelSampleSet | np.ndarray | Sequence[float]",
) -> GammaFit:
    if isinstance(samples, ChannelSampleSet):
        values = samples.samples
    else:
        values = np.asarray(samples, dtype=float)
    power = np.square(values)
    mean = float(np.mean(power)) if power.size else 0.0
    var = float(np.var(power)) if power.size else 0.0
    if not var > 0 or not mean > 0:
        raise DegenerateSampleError(
            "Gamma moment matching needs h^2 with positive mean and variance"
        )

    fit = GammaFit(shape=mean**2 / var, scale=var / mean)
    logger.debug(f"Gamma MoM baseline: k={fit.shape:.4f}, theta={fit.scale:.4e}")
    return fit
