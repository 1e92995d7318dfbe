"""Shared fixtures for the test suite."""

import os

os.environ.setdefault("RIS_EM_TEST_MODE", "1")

from typing import Optional  # noqa: E402

import pytest  # noqa: E402

from channel import (  # noqa: E402
    CorrelatedRayleigh,
    GeneralizedIid,
    LinkBudget,
    RisGeometry,
    ScenarioConfig,
    SpecularSpec,
)
from sampling import RngStream  # noqa: E402
from tests.helpers import ScenarioBuilder  # noqa: E402


@pytest.fixture
def rng() -> RngStream:
    return RngStream(seed=2022, stream_id=0)


@pytest.fixture
def correlated_scenario() -> ScenarioBuilder:
    """Builder for correlated-Rayleigh scenarios

    Defaults: 6x6 RIS at lambda/8, M = 1.
    """

    def build(
        n: int = 36,
        m_antennas: int = 1,
        kappa: float = 1.0,
        iid: bool = False,
        sample_count: int = 2000,
        spacing: float = 0.1 / 8,
        direct_db: Optional[float] = None,
    ) -> ScenarioConfig:
        return ScenarioConfig(
            geometry=RisGeometry.square(n, spacing),
            budget=LinkBudget(
                beta1_db=-75.0,
                beta2_db=-75.0,
                beta_sd_db=direct_db,
                direct_link=direct_db is not None,
                area_included=True,
            ),
            m_antennas=m_antennas,
            kappa=kappa,
            variant=CorrelatedRayleigh(iid=iid),
            sample_count=sample_count,
        )

    return build


@pytest.fixture
def generalized_scenario() -> ScenarioBuilder:
    """Builder for two-wave generalized fading on a lambda/2 RIS"""

    def build(
        n: int = 49, direct: bool = False, sample_count: int = 2000
    ) -> ScenarioConfig:
        two_wave = SpecularSpec(num_waves=2, v1=1.0, alpha=0.5, omega0=1.0)
        return ScenarioConfig(
            geometry=RisGeometry.square(n, 0.05),
            budget=LinkBudget(
                beta1_db=-55.0,
                beta2_db=-55.0,
                beta_sd_db=-135.0 if direct else None,
                direct_link=direct,
            ),
            kappa=1.0,
            variant=GeneralizedIid(
                spec_ris_in=two_wave,
                spec_ris_out=two_wave,
                spec_direct=(
                    SpecularSpec.from_k_factor(1, 5.0) if direct else SpecularSpec()
                ),
            ),
            sample_count=sample_count,
        )

    return build
