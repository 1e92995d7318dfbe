from .baseline import GammaFit, gamma_mom_baseline
from .export import CSV_HEADER, format_decimal, write_curve_csv
from .models import NmseDomain, OutageCurve, OutageMethod, validate_rate_grid
from .nmse import nmse
from .outage import (
    analytic_curve,
    empirical_curve,
    outage_analytic,
    outage_empirical,
    power_threshold,
)

__all__ = [
    "CSV_HEADER",
    "GammaFit",
    "NmseDomain",
    "OutageCurve",
    "OutageMethod",
    "analytic_curve",
    "empirical_curve",
    "format_decimal",
    "gamma_mom_baseline",
    "nmse",
    "outage_analytic",
    "outage_empirical",
    "power_threshold",
    "validate_rate_grid",
    "write_curve_csv",
]
