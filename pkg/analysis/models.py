"""
Outage curve model shared by the analytic, Monte Carlo and baseline evaluators
"""

from typing import Any, List, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

OutageMethod = Literal["mixture-analytic", "monte-carlo", "gamma-mom"]
NmseDomain = Literal["linear", "log10"]

# gammainc round-off may break exact monotonicity in the far tail
_MONOTONE_SLACK = 1e-12


def validate_rate_grid(values: List[float]) -> List[float]:
    grid = np.asarray(values, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("Rate grid must be a non-empty list")
    if not np.all(np.isfinite(grid)) or np.any(grid <= 0):
        raise ValueError("Rate thresholds must be finite and positive")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("Rate grid must be strictly increasing")
    return [float(v) for v in grid]


class OutageCurve(BaseModel):
    """OP(R_th) sampled on a rate grid"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    rate_grid: List[float] = Field(
        ..., description="R_th values in b/s/Hz, strictly increasing"
    )
    op_values: List[float] = Field(..., description="Outage probability per grid point")
    ci_halfwidth: List[float] = Field(
        default_factory=list,
        description="95% Wilson half-width per point; zeros for model-based curves",
    )
    method: OutageMethod

    @field_validator("rate_grid")
    @classmethod
    def validate_grid(cls, v: List[float]) -> List[float]:
        return validate_rate_grid(v)

    @field_validator("op_values")
    @classmethod
    def validate_probabilities(cls, v: List[float]) -> List[float]:
        values = np.asarray(v, dtype=float)
        if np.any(~np.isfinite(values)) or np.any(values < 0) or np.any(values > 1):
            raise ValueError("Outage probabilities must lie in [0, 1]")
        if np.any(np.diff(values) < -_MONOTONE_SLACK):
            raise ValueError("Outage probability must be non-decreasing in R_th")
        return [float(x) for x in values]

    @model_validator(mode="before")
    @classmethod
    def fill_halfwidth(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("ci_halfwidth"):
            data = {**data, "ci_halfwidth": [0.0] * len(data.get("rate_grid") or [])}
        return data

    @model_validator(mode="after")
    def validate_lengths(self) -> "OutageCurve":
        if len(self.op_values) != len(self.rate_grid):
            raise ValueError(
                f"{len(self.op_values)} outage values for "
                f"{len(self.rate_grid)} rate thresholds"
            )
        if len(self.ci_halfwidth) != len(self.rate_grid):
            raise ValueError("ci_halfwidth must match the rate grid length")
        return self

    def as_arrays(self) -> "tuple[np.ndarray, np.ndarray]":
        return np.asarray(self.rate_grid), np.asarray(self.op_values)
