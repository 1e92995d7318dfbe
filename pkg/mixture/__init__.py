from .density import (
    component_log_densities,
    log_likelihood,
    mixture_cdf,
    mixture_log_pdf,
    mixture_pdf,
    nakagami_component_pdf,
    nakagami_log_pdf,
)
from .em import closed_form_m, e_step, exact_m, fit, m_step, mle_initialize
from .models import (
    M_MAX,
    M_MIN,
    EmTrace,
    FitOptions,
    NakagamiComponent,
    NakagamiMixture,
    likelihood_slack,
)

__all__ = [
    "M_MAX",
    "M_MIN",
    "EmTrace",
    "FitOptions",
    "NakagamiComponent",
    "NakagamiMixture",
    "closed_form_m",
    "component_log_densities",
    "e_step",
    "exact_m",
    "fit",
    "likelihood_slack",
    "log_likelihood",
    "m_step",
    "mixture_cdf",
    "mixture_log_pdf",
    "mixture_pdf",
    "mle_initialize",
    "nakagami_component_pdf",
    "nakagami_log_pdf",
]
