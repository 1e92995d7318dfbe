"""
Pydantic models for the two-component Nakagami-m mixture and its EM trace
"""

import sys
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

M_MIN = 0.5
M_MAX = 200.0
_WEIGHT_TOLERANCE = 1e-9
LOG_LIKELIHOOD_TOLERANCE = 1e-9


class NakagamiComponent(BaseModel):
    """One weighted Nakagami-m density"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    weight: float = Field(..., ge=0.0, le=1.0, description="Mixture weight omega_i")
    m: float = Field(..., ge=M_MIN, description="Shape (fading) parameter m_i")
    omega: float = Field(..., gt=0.0, description="Spread Omega_i = E[h^2]")


class NakagamiMixture(BaseModel):
    """Exactly two components whose weights sum to one"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    components: Tuple[NakagamiComponent, NakagamiComponent]

    @model_validator(mode="after")
    def validate_weights(self) -> "NakagamiMixture":
        total = sum(c.weight for c in self.components)
        if abs(total - 1.0) > _WEIGHT_TOLERANCE:
            raise ValueError(f"Mixture weights must sum to 1, got {total}")
        return self

    @classmethod
    def from_arrays(  # type: ignore[no-untyped-def]
        cls, weights, m, omega
    ) -> "NakagamiMixture":
        return cls(
            components=tuple(  # type: ignore[arg-type]
                NakagamiComponent(weight=float(w), m=float(mi), omega=float(o))
                for w, mi, o in zip(weights, m, omega)
            )
        )

    @classmethod
    def single(cls, m: float, omega: float) -> "NakagamiMixture":
        """Degenerate mixture equivalent to one Nakagami-m law"""
        return cls.from_arrays((1.0, 0.0), (m, m), (omega, omega))

    @property
    def weights(self) -> List[float]:
        return [c.weight for c in self.components]

    @property
    def shapes(self) -> List[float]:
        return [c.m for c in self.components]

    @property
    def spreads(self) -> List[float]:
        return [c.omega for c in self.components]

    @property
    def mean_power(self) -> float:
        """E[h^2] of the mixture"""
        return sum(c.weight * c.omega for c in self.components)

    def sorted(self) -> "NakagamiMixture":
        """Canonical order: ascending spread"""
        ordered = sorted(self.components, key=lambda c: (c.omega, c.m))
        return NakagamiMixture(components=tuple(ordered))  # type: ignore[arg-type]

    def to_record(self, iterations: int, converged: bool) -> Dict[str, float]:
        """Flat record of the fit; iterations and converged come from its EmTrace"""
        first, second = self.components
        return {
            "omega1": first.weight,
            "m1": first.m,
            "Omega1": first.omega,
            "omega2": second.weight,
            "m2": second.m,
            "Omega2": second.omega,
            "iterations": iterations,
            "converged": converged,
        }

    @classmethod
    def from_record(cls, record: Dict[str, float]) -> "NakagamiMixture":
        return cls.from_arrays(
            (record["omega1"], record["omega2"]),
            (record["m1"], record["m2"]),
            (record["Omega1"], record["Omega2"]),
        )


def likelihood_slack(log_lik: float, tol: float = LOG_LIKELIHOOD_TOLERANCE) -> float:
    """Allowed decrease of the log-likelihood in one EM step.

    An absolute tol, except that a sum of t terms of magnitude |LL| cannot
    be resolved below its rounding error, so the floor is 256 ulp of |LL|
    (about 5.7e-14 * |LL|). For |LL| below 1.7e4 the absolute tol governs.
    """
    return max(tol, 256 * sys.float_info.epsilon * abs(log_lik))


@dataclass
class EmTrace:
    """Bookkeeping of one EM run"""

    iterations: int = 0
    final_rel_change: Dict[str, List[float]] = field(
        default_factory=lambda: {"omega": [float("inf")] * 2, "m": [float("inf")] * 2}
    )
    log_likelihood_history: List[float] = field(default_factory=list)
    converged: bool = False
    underflow_samples: int = 0
    exact_m_steps: int = 0

    def is_monotone(self, tol: float = LOG_LIKELIHOOD_TOLERANCE) -> bool:
        """Non-decreasing history up to likelihood_slack(LL, tol) per step"""
        history = self.log_likelihood_history
        return all(
            later >= earlier - likelihood_slack(earlier, tol)
            for earlier, later in zip(history, history[1:])
        )

    def summary(self) -> Dict[str, object]:
        return {
            "iterations": self.iterations,
            "converged": self.converged,
            "final_rel_change": self.final_rel_change,
            "final_log_likelihood": (
                self.log_likelihood_history[-1]
                if self.log_likelihood_history
                else None
            ),
            "underflow_samples": self.underflow_samples,
            "exact_m_steps": self.exact_m_steps,
        }


class FitOptions(BaseModel):
    """EM controls; defaults follow the relative-tolerance rule of 1e-3"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    epsilon: float = Field(1e-3, gt=0)
    max_iter: int = Field(500, ge=0)
    monotone_fallback: bool = Field(
        True,
        description="Redo an M-step with the exact m-update "
        "if the closed form lowers the likelihood",
    )

    @field_validator("epsilon")
    @classmethod
    def validate_epsilon(cls, v: float) -> float:
        if v >= 1:
            raise ValueError("Relative tolerance must be below 1")
        return v
