from .correlation import build_correlation_matrix
from .links import (
    CorrelatedRayleighLinks,
    GeneralizedLinks,
    LinkModel,
    draw_correlated_rayleigh_links,
    draw_generalized_links,
)
from .models import (
    ChannelSampleSet,
    CorrelatedRayleigh,
    GeneralizedIid,
    LinkBudget,
    RisGeometry,
    ScenarioConfig,
    SpecularSpec,
    db_to_linear,
)
from .simulate import (
    apply_phase_design,
    simulate_equivalent_channel,
    snr_from_magnitude,
)

__all__ = [
    "ChannelSampleSet",
    "CorrelatedRayleigh",
    "CorrelatedRayleighLinks",
    "GeneralizedIid",
    "GeneralizedLinks",
    "LinkBudget",
    "LinkModel",
    "RisGeometry",
    "ScenarioConfig",
    "SpecularSpec",
    "apply_phase_design",
    "build_correlation_matrix",
    "db_to_linear",
    "draw_correlated_rayleigh_links",
    "draw_generalized_links",
    "simulate_equivalent_channel",
    "snr_from_magnitude",
]
