"""
Experiment specification, report and per-stage records
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from analysis import NmseDomain, OutageCurve, validate_rate_grid
from channel import ScenarioConfig
from config import get_settings
from mixture import FitOptions, NakagamiMixture

DEFAULT_RATE_GRID = np.geomspace(0.05, 10.0, 50).tolist()
BaselineName = Literal["gamma-mom"]


def _default_seed() -> int:
    return get_settings().default_seed


def _default_fit_options() -> FitOptions:
    settings = get_settings()
    return FitOptions(epsilon=settings.em_epsilon, max_iter=settings.em_max_iter)


class ExperimentSpec(BaseModel):
    """One simulate -> fit -> evaluate run.

    The JSON config mirrors this model field for field.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    scenario: ScenarioConfig
    rate_grid: List[float] = Field(
        default_factory=lambda: list(DEFAULT_RATE_GRID),
        description="R_th values in b/s/Hz, strictly increasing",
    )
    seed: int = Field(default_factory=_default_seed, description="Unsigned 64-bit seed")
    preset_name: Optional[str] = Field(
        None, description="Named preset this spec reproduces"
    )
    baselines: List[BaselineName] = Field(default_factory=list)
    nmse_domain: NmseDomain = "linear"
    fit: FitOptions = Field(default_factory=_default_fit_options)

    @field_validator("rate_grid")
    @classmethod
    def validate_grid(cls, v: List[float]) -> List[float]:
        return validate_rate_grid(v)

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        if not 0 <= v < 2**64:
            raise ValueError("Seed must be an unsigned 64-bit integer")
        return v

    @field_validator("baselines")
    @classmethod
    def validate_baselines(cls, v: List[str]) -> List[str]:
        if len(set(v)) != len(v):
            raise ValueError("Baselines must not repeat")
        return v

    @model_validator(mode="after")
    def validate_preset(self) -> "ExperimentSpec":
        if self.preset_name is not None:
            from .presets import check_preset_scenario

            check_preset_scenario(self.preset_name, self.scenario)
        return self

    def with_overrides(self, **updates: Any) -> "ExperimentSpec":
        """Re-validated copy; unlike model_copy this runs every validator"""
        data = self.model_dump()
        for key, value in updates.items():
            if key in ("sample_count", "m_antennas"):
                data["scenario"][key] = value
            else:
                data[key] = value
        return ExperimentSpec.model_validate(data)


class ExperimentReport(BaseModel):
    """Result of run_experiment; timing is kept apart from the deterministic part"""

    model_config = ConfigDict(extra="forbid")

    fitted: NakagamiMixture
    fitted_record: Dict[str, Any] = Field(
        ...,
        description="Flat record of the fitted mixture with its iteration count "
        "and convergence",
    )
    em: Dict[str, Any] = Field(..., description="EmTrace summary")
    curves: List[OutageCurve]
    nmse_table: Dict[str, Optional[float]] = Field(
        ..., description="NMSE of each model curve against the Monte Carlo reference"
    )
    samples: Dict[str, Any] = Field(
        ..., description="Sample-set identity and summary statistics"
    )
    config_echo: Dict[str, Any] = Field(
        ..., description="Fully resolved experiment spec"
    )
    timing: Dict[str, float] = Field(
        default_factory=dict, description="Wall-clock seconds per stage"
    )

    @model_validator(mode="after")
    def validate_grids(self) -> "ExperimentReport":
        grid = self.config_echo.get("rate_grid")
        for curve in self.curves:
            if grid is not None and curve.rate_grid != grid:
                raise ValueError(
                    f"Curve '{curve.method}' does not share the spec rate grid"
                )
        return self

    @model_validator(mode="after")
    def validate_fitted_record(self) -> "ExperimentReport":
        try:
            recorded = NakagamiMixture.from_record(self.fitted_record)
        except KeyError as e:
            raise ValueError(f"fitted_record is missing {e}") from e
        if recorded != self.fitted:
            raise ValueError("fitted_record does not describe the fitted mixture")
        for key in ("iterations", "converged"):
            if self.fitted_record.get(key) != self.em.get(key):
                raise ValueError(f"fitted_record {key} disagrees with the EM summary")
        return self

    @property
    def converged(self) -> bool:
        return bool(self.em.get("converged"))

    def curve(self, method: str) -> OutageCurve:
        for curve in self.curves:
            if curve.method == method:
                return curve
        raise KeyError(f"No '{method}' curve in report")


class Stage(Enum):
    SIMULATE = "simulate"
    FIT = "fit"
    EVALUATE = "evaluate"


class StageStatus(Enum):
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class StageRecord:
    stage: Stage
    run_id: str
    status: StageStatus
    seconds: float
    detail: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if isinstance(self.stage, str):
            self.stage = Stage(self.stage)
        if isinstance(self.status, str):
            self.status = StageStatus(self.status)

    @classmethod
    def create(
        cls,
        stage: Stage,
        run_id: str,
        seconds: float,
        status: StageStatus = StageStatus.COMPLETED,
        detail: Optional[Dict[str, Any]] = None,
    ) -> "StageRecord":
        return cls(
            stage=stage,
            run_id=run_id,
            status=status,
            seconds=seconds,
            detail=detail or {},
        )
