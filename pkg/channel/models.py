"""
Pydantic models describing an RIS link scenario
"""

import hashlib
import math
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

DEFAULT_WAVELENGTH = 0.1
DEFAULT_SAMPLE_COUNT = 100_000
DEFAULT_SNR_BUDGET_DB = 124.0


def db_to_linear(value_db: float) -> float:
    """Power-domain conversion 10^(dB/10)"""
    return float(10.0 ** (value_db / 10.0))


class RisGeometry(BaseModel):
    """Rectangular array of n_h x n_v elements of size d_h x d_v"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n_h: int = Field(..., ge=1, description="Elements per row (N_H)")
    n_v: int = Field(..., ge=1, description="Elements per column (N_V)")
    d_h: float = Field(..., gt=0, description="Horizontal element width in meters")
    d_v: float = Field(..., gt=0, description="Vertical element height in meters")
    wavelength: float = Field(
        DEFAULT_WAVELENGTH, gt=0, description="Carrier wavelength in meters"
    )

    @classmethod
    def square(
        cls, n: int, spacing: float, wavelength: float = DEFAULT_WAVELENGTH
    ) -> "RisGeometry":
        side = math.isqrt(n)
        if side * side != n:
            raise ValueError(f"{n} elements do not form a square array")
        return cls(n_h=side, n_v=side, d_h=spacing, d_v=spacing, wavelength=wavelength)

    @property
    def n(self) -> int:
        return self.n_h * self.n_v

    @property
    def element_area(self) -> float:
        return self.d_h * self.d_v

    def element_positions(self) -> np.ndarray:
        """u_zeta = [0, mod(zeta, N_H) d_H, floor(zeta / N_H) d_V] for 0-based zeta"""
        zeta = np.arange(self.n)
        return np.column_stack(
            [
                np.zeros(self.n),
                (zeta % self.n_h) * self.d_h,
                (zeta // self.n_h) * self.d_v,
            ]
        )


class LinkBudget(BaseModel):
    """Average path attenuations of the three links, in dB"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    beta1_db: float = Field(..., description="S->RIS attenuation (beta_1)")
    beta2_db: float = Field(..., description="RIS->D attenuation (beta_2)")
    beta_sd_db: Optional[float] = Field(
        None, description="Direct S->D attenuation (beta_sd)"
    )
    direct_link: bool = Field(False, description="Whether the direct S->D path exists")
    area_included: bool = Field(
        False,
        description="beta1_db/beta2_db already include the element area A",
    )

    @field_validator("beta1_db", "beta2_db")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("RIS link attenuations must be finite")
        return v

    @model_validator(mode="after")
    def validate_direct(self) -> "LinkBudget":
        missing = self.beta_sd_db is None or not math.isfinite(self.beta_sd_db)
        if self.direct_link and missing:
            raise ValueError("direct_link requires a finite beta_sd_db")
        return self

    @property
    def beta1(self) -> float:
        return db_to_linear(self.beta1_db)

    @property
    def beta2(self) -> float:
        return db_to_linear(self.beta2_db)

    @property
    def beta_sd(self) -> float:
        """Linear direct-path power; exactly zero when the path is blocked"""
        if not self.direct_link or self.beta_sd_db is None:
            return 0.0
        return db_to_linear(self.beta_sd_db)

    def ris_in_power(self, area: float) -> float:
        """Power scale of g_q; pass area=1.0 for links whose model omits A"""
        return self.beta1 if self.area_included else area * self.beta1

    def ris_out_power(self, area: float) -> float:
        return self.beta2 if self.area_included else area * self.beta2


class SpecularSpec(BaseModel):
    """L specular waves of amplitudes V_1, alpha V_1, ... plus diffuse power Omega_0"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    num_waves: int = Field(0, ge=0, description="Number of specular components L")
    v1: float = Field(
        0.0, ge=0, description="Amplitude of the first specular component"
    )
    alpha: float = Field(0.5, gt=0, lt=1, description="V_l = alpha * V_1 for l >= 2")
    omega0: float = Field(1.0, ge=0, description="Diffuse power Omega_0")

    @model_validator(mode="after")
    def validate_power(self) -> "SpecularSpec":
        if self.num_waves == 0 and self.omega0 == 0:
            raise ValueError("A link with no specular waves needs diffuse power")
        return self

    @classmethod
    def from_k_factor(
        cls, num_waves: int, k_db: float, alpha: float = 0.5, omega0: float = 1.0
    ) -> "SpecularSpec":
        """Amplitudes from the power ratio K_L = Omega_L / Omega_0 in dB"""
        if num_waves < 1:
            raise ValueError("A K factor needs at least one specular wave")
        omega_l = db_to_linear(k_db) * omega0
        v1 = math.sqrt(omega_l / (1.0 + (num_waves - 1) * alpha**2))
        return cls(num_waves=num_waves, v1=v1, alpha=alpha, omega0=omega0)

    @property
    def amplitudes(self) -> np.ndarray:
        if self.num_waves == 0:
            return np.zeros(0)
        tail = np.full(self.num_waves - 1, self.alpha)
        return self.v1 * np.concatenate([[1.0], tail])

    @property
    def specular_power(self) -> float:
        """Omega_L = V_1^2 (1 + (L - 1) alpha^2)"""
        if self.num_waves == 0:
            return 0.0
        return self.v1**2 * (1.0 + (self.num_waves - 1) * self.alpha**2)

    @property
    def total_power(self) -> float:
        return self.omega0 + self.specular_power

    @property
    def k_factor(self) -> float:
        if self.omega0 == 0:
            return math.inf
        return self.specular_power / self.omega0

    @property
    def k_factor_db(self) -> float:
        k = self.k_factor
        return -math.inf if k == 0 else 10.0 * math.log10(k)


class CorrelatedRayleigh(BaseModel):
    """Spatially correlated Rayleigh links sharing the RIS correlation matrix"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["correlated-rayleigh"] = "correlated-rayleigh"
    iid: bool = Field(False, description="Replace R by the identity (i.i.d. reference)")


class GeneralizedIid(BaseModel):
    """I.i.d. multi-wave fading on every scalar coefficient"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["generalized-iid"] = "generalized-iid"
    spec_ris_in: SpecularSpec
    spec_ris_out: SpecularSpec
    spec_direct: SpecularSpec = Field(default_factory=SpecularSpec)


ScenarioVariant = Union[CorrelatedRayleigh, GeneralizedIid]


class ScenarioConfig(BaseModel):
    """Complete description of one simulated RIS scenario"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    geometry: RisGeometry
    budget: LinkBudget
    m_antennas: int = Field(1, ge=1, description="Transmit antennas M")
    kappa: float = Field(..., ge=0, description="Phase-error concentration")
    variant: ScenarioVariant = Field(..., discriminator="kind")
    snr_budget_db: float = Field(
        DEFAULT_SNR_BUDGET_DB, description="P_T / noise power in dB"
    )
    sample_count: int = Field(DEFAULT_SAMPLE_COUNT, ge=1, description="Realizations t")

    @field_validator("kappa")
    @classmethod
    def validate_kappa(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(
                "kappa must be finite; use a large value for near-perfect phases"
            )
        return v

    @property
    def n_elements(self) -> int:
        return self.geometry.n

    @property
    def rho(self) -> float:
        return db_to_linear(self.snr_budget_db)

    def digest(self) -> str:
        return hashlib.sha256(self.model_dump_json().encode("utf-8")).hexdigest()

    def implied_k_factors(self) -> dict:
        """K_L of each specular spec, reported alongside fitted results"""
        if not isinstance(self.variant, GeneralizedIid):
            return {}
        specs = {
            "ris_in": self.variant.spec_ris_in,
            "ris_out": self.variant.spec_ris_out,
            "direct": self.variant.spec_direct,
        }
        return {
            name: (spec.k_factor if math.isfinite(spec.k_factor) else None)
            for name, spec in specs.items()
        }


@dataclass
class ChannelSampleSet:
    """t realizations of the equivalent magnitude channel h"""

    samples: np.ndarray = field(repr=False)
    config_digest: str
    seed: int
    stream_id: int = 0
    substream: List[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1:
            raise ValueError("Channel samples must be a 1-D array")
        if not np.all(np.isfinite(samples)) or np.any(samples < 0):
            raise ValueError("Channel samples must be finite and non-negative")
        self.samples = samples

    def __len__(self) -> int:
        return int(self.samples.size)

    @classmethod
    def from_array(
        cls,
        samples: "np.ndarray | list",
        seed: int = 0,
        label: Optional[str] = None,
    ) -> "ChannelSampleSet":
        """Wrap externally obtained magnitudes (e.g. measurements)"""
        digest = hashlib.sha256((label or "external").encode("utf-8")).hexdigest()
        values = np.asarray(samples, dtype=float)
        return cls(samples=values, config_digest=digest, seed=seed)

    def power(self) -> np.ndarray:
        return self.samples**2
