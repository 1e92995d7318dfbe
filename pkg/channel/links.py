"""
Link models

Each scenario variant draws the three channels of one realization (or a batch
of them). The simulator only talks to the abstract ``LinkModel``.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from sampling import (
    CorrelationMatrix,
    RngStream,
    sample_correlated_complex_gaussian,
    sample_standard_complex_gaussian,
)

from .correlation import build_correlation_matrix
from .models import CorrelatedRayleigh, GeneralizedIid, ScenarioConfig, SpecularSpec

Links = Tuple[np.ndarray, np.ndarray, np.ndarray]


@dataclass(frozen=True)
class LinkShapes:
    n: int
    m: int
    batch: Tuple[int, ...]

    @property
    def g(self) -> Tuple[int, ...]:
        return (*self.batch, self.n, self.m)

    @property
    def h2(self) -> Tuple[int, ...]:
        return (*self.batch, self.n)

    @property
    def hsd(self) -> Tuple[int, ...]:
        return (*self.batch, self.m)


def _shapes(config: ScenarioConfig, size: Optional[int]) -> LinkShapes:
    batch = () if size is None else (int(size),)
    return LinkShapes(n=config.n_elements, m=config.m_antennas, batch=batch)


class LinkModel(ABC):
    """Draws (G, h2, hsd): G is N x M with G[n, q] = g_qn"""

    def __init__(self, config: ScenarioConfig) -> None:
        self.config = config

    @abstractmethod
    def draw(self, rng: RngStream, size: Optional[int] = None) -> Links:
        """One realization, or ``size`` stacked realizations along axis 0"""

    @classmethod
    def for_config(cls, config: ScenarioConfig) -> "LinkModel":
        if isinstance(config.variant, CorrelatedRayleigh):
            return CorrelatedRayleighLinks(config)
        if isinstance(config.variant, GeneralizedIid):
            return GeneralizedLinks(config)
        raise TypeError(
            f"Unsupported scenario variant: {type(config.variant).__name__}"
        )


class CorrelatedRayleighLinks(LinkModel):
    """h2 ~ CN(0, A beta2 R), g_q ~ CN(0, A beta1 R), hsd ~ CN(0, beta_sd I)"""

    def __init__(
        self, config: ScenarioConfig, correlation: Optional[CorrelationMatrix] = None
    ) -> None:
        super().__init__(config)
        if correlation is None:
            if config.variant.iid:  # type: ignore[union-attr]
                correlation = CorrelationMatrix.identity(config.n_elements)
            else:
                correlation = build_correlation_matrix(config.geometry)
        if correlation.n != config.n_elements:
            raise ValueError(
                f"Correlation matrix is {correlation.n}x{correlation.n}, "
                f"scenario has N={config.n_elements}"
            )
        self.correlation = correlation
        # Factor once so concurrent batches only read it
        _ = self.correlation.eigen_factor
        logger.debug(
            f"Correlation matrix N={correlation.n} "
            f"has numerical rank {correlation.rank()}"
        )

    def draw(self, rng: RngStream, size: Optional[int] = None) -> Links:
        shapes = _shapes(self.config, size)
        budget = self.config.budget
        area = self.config.geometry.element_area

        h2 = sample_correlated_complex_gaussian(
            rng, self.correlation, budget.ris_out_power(area), shapes.batch
        )
        # every column g_q shares R; draw M independent N-vectors and put q last
        g_rows = sample_correlated_complex_gaussian(
            rng, self.correlation, budget.ris_in_power(area), (*shapes.batch, shapes.m)
        )
        g = np.swapaxes(g_rows, -1, -2)
        hsd = _direct_rayleigh(rng, budget.beta_sd, shapes.hsd)
        return g, h2, hsd


def _direct_rayleigh(
    rng: RngStream, power: float, shape: Tuple[int, ...]
) -> np.ndarray:
    if power == 0.0:
        return np.zeros(shape, dtype=complex)
    return np.sqrt(power) * sample_standard_complex_gaussian(rng, shape)


def sample_multiwave(
    rng: RngStream, spec: SpecularSpec, power: float, shape: Tuple[int, ...]
) -> np.ndarray:
    """sqrt(power) * (sum_l V_l exp(j theta_l) + Z)

    theta_l ~ U[0, 2pi) and Z ~ CN(0, Omega_0).
    """
    coefficients = np.sqrt(spec.omega0) * sample_standard_complex_gaussian(rng, shape)
    if spec.num_waves:
        theta = rng.uniform(0.0, 2.0 * np.pi, (*shape, spec.num_waves))
        coefficients = coefficients + np.exp(1j * theta) @ spec.amplitudes
    return np.sqrt(power) * coefficients


class GeneralizedLinks(LinkModel):
    """Independent multi-wave coefficients; only the S->RIS link carries A"""

    def draw(self, rng: RngStream, size: Optional[int] = None) -> Links:
        shapes = _shapes(self.config, size)
        budget = self.config.budget
        variant: GeneralizedIid = self.config.variant  # type: ignore[assignment]
        area = self.config.geometry.element_area

        g = sample_multiwave(
            rng, variant.spec_ris_in, budget.ris_in_power(area), shapes.g
        )
        h2 = sample_multiwave(
            rng, variant.spec_ris_out, budget.ris_out_power(1.0), shapes.h2
        )
        if budget.direct_link:
            hsd = sample_multiwave(rng, variant.spec_direct, budget.beta_sd, shapes.hsd)
        else:
            hsd = np.zeros(shapes.hsd, dtype=complex)
        return g, h2, hsd


def draw_correlated_rayleigh_links(
    rng: RngStream, config: ScenarioConfig, size: Optional[int] = None
) -> Links:
    if not isinstance(config.variant, CorrelatedRayleigh):
        raise ValueError("Scenario variant is not correlated Rayleigh")
    return CorrelatedRayleighLinks(config).draw(rng, size)


def draw_generalized_links(
    rng: RngStream, config: ScenarioConfig, size: Optional[int] = None
) -> Links:
    if not isinstance(config.variant, GeneralizedIid):
        raise ValueError("Scenario variant is not generalized i.i.d. fading")
    return GeneralizedLinks(config).draw(rng, size)
