"""
Named scenarios, one per figure curve or table row

Every preset fixes the whole scenario. The only accepted deviations are the
run controls (sample count, seed) and, for the fig1a family, the number of
transmit antennas.
"""

from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from channel import (
    CorrelatedRayleigh,
    GeneralizedIid,
    LinkBudget,
    RisGeometry,
    ScenarioConfig,
    SpecularSpec,
)
from channel.models import DEFAULT_WAVELENGTH
from errors import ConfigError

from .models import ExperimentSpec

WAVELENGTH = DEFAULT_WAVELENGTH
RIS_BUDGET_DB = -75.0  # A beta_1 = A beta_2
GENERALIZED_BETA_DB = -55.0
FIG1C_DIRECT_DB = -130.0
FIG2B_DIRECT_DB = -135.0
FIG2B_DIRECT_K_DB = 5.0

FIG1A_ELEMENTS = (36, 144)
FIG1A_ANTENNAS = (1, 2, 4)
FIG1B_ELEMENTS = (36, 100, 256)
FIG1C_ELEMENTS = 100
FIG1C_SPACINGS = {"lambda4": 4, "lambda8": 8, "lambda12": 12}
FIG2_ELEMENTS = (49, 100, 196)


def _correlated(
    n: int,
    spacing: float,
    m_antennas: int = 1,
    kappa: float = 1.0,
    iid: bool = False,
    direct_db: Optional[float] = None,
) -> ScenarioConfig:
    return ScenarioConfig(
        geometry=RisGeometry.square(n, spacing, WAVELENGTH),
        budget=LinkBudget(
            beta1_db=RIS_BUDGET_DB,
            beta2_db=RIS_BUDGET_DB,
            beta_sd_db=direct_db,
            direct_link=direct_db is not None,
            area_included=True,
        ),
        m_antennas=m_antennas,
        kappa=kappa,
        variant=CorrelatedRayleigh(iid=iid),
    )


def _generalized(n: int, direct: bool) -> ScenarioConfig:
    two_wave = SpecularSpec(num_waves=2, v1=1.0, alpha=0.5, omega0=1.0)
    return ScenarioConfig(
        geometry=RisGeometry.square(n, WAVELENGTH / 2, WAVELENGTH),
        budget=LinkBudget(
            beta1_db=GENERALIZED_BETA_DB,
            beta2_db=GENERALIZED_BETA_DB,
            beta_sd_db=FIG2B_DIRECT_DB if direct else None,
            direct_link=direct,
            area_included=False,
        ),
        kappa=1.0,
        variant=GeneralizedIid(
            spec_ris_in=two_wave,
            spec_ris_out=two_wave,
            spec_direct=(
                SpecularSpec.from_k_factor(1, FIG2B_DIRECT_K_DB)
                if direct
                else SpecularSpec()
            ),
        ),
    )


def _catalog() -> Dict[str, Callable[[], ScenarioConfig]]:
    catalog: Dict[str, Callable[[], ScenarioConfig]] = {}
    eighth = WAVELENGTH / 8

    for n in FIG1A_ELEMENTS:
        for m in FIG1A_ANTENNAS:
            catalog[f"fig1a-N{n}-M{m}"] = lambda n=n, m=m: _correlated(
                n, eighth, m_antennas=m
            )

    for n in FIG1B_ELEMENTS:
        catalog[f"fig1b-N{n}"] = lambda n=n: _correlated(n, eighth)
        catalog[f"fig1b-N{n}-iid"] = lambda n=n: _correlated(n, eighth, iid=True)

    for label, divisor in FIG1C_SPACINGS.items():
        catalog[f"fig1c-{label}"] = lambda d=divisor: _correlated(
            FIG1C_ELEMENTS, WAVELENGTH / d, kappa=3.0, direct_db=FIG1C_DIRECT_DB
        )
    catalog["fig1c-iid"] = lambda: _correlated(
        FIG1C_ELEMENTS, eighth, kappa=3.0, iid=True, direct_db=FIG1C_DIRECT_DB
    )

    for n in FIG2_ELEMENTS:
        catalog[f"fig2a-N{n}"] = lambda n=n: _generalized(n, direct=False)
    for n in FIG2_ELEMENTS:
        catalog[f"fig2b-N{n}"] = lambda n=n: _generalized(n, direct=True)

    return catalog


_PRESETS = _catalog()


def preset_names() -> List[str]:
    return list(_PRESETS)


def preset_scenario(name: str) -> ScenarioConfig:
    try:
        return _PRESETS[name]()
    except KeyError:
        raise ConfigError(
            f"Unknown preset '{name}'. Run list-presets to see the catalog"
        ) from None


def allows_antenna_override(name: str) -> bool:
    return name.startswith("fig1a-")


def check_preset_scenario(name: str, scenario: ScenarioConfig) -> None:
    """Reject a scenario that deviates from its preset beyond the permitted overrides"""
    expected = preset_scenario(name)
    permitted = {"sample_count": scenario.sample_count}
    if allows_antenna_override(name):
        permitted["m_antennas"] = scenario.m_antennas
    if {**expected.model_dump(), **permitted} != scenario.model_dump():
        raise ConfigError(
            f"Scenario does not match preset '{name}'; "
            "presets only accept run-control overrides"
        )


def get_preset(
    name: str,
    seed: Optional[int] = None,
    sample_count: Optional[int] = None,
    antennas: Optional[int] = None,
) -> ExperimentSpec:
    """ExperimentSpec of a preset with optional run-control overrides"""
    scenario = preset_scenario(name)
    if antennas is not None and not allows_antenna_override(name):
        raise ConfigError(
            f"Preset '{name}' fixes the antenna count; --antennas applies to fig1a only"
        )

    overrides: Dict[str, Any] = {}
    if antennas is not None:
        overrides["m_antennas"] = antennas
    if sample_count is not None:
        overrides["sample_count"] = sample_count

    data: Dict[str, Any] = {
        "scenario": {**scenario.model_dump(), **overrides},
        "preset_name": name,
        "baselines": ["gamma-mom"],
    }
    if seed is not None:
        data["seed"] = seed
    try:
        return ExperimentSpec.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid override for preset '{name}': {e}") from e


def list_presets() -> Dict[str, ExperimentSpec]:
    """Catalog of every preset, resolved to its ExperimentSpec"""
    return {name: get_preset(name) for name in _PRESETS}
