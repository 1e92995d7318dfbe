"""
Outage probability of the RIS link

OP(R_th) = P(log2(1 + rho h^2) < R_th) = F_h(sqrt((2^R_th - 1) / rho)).
The analytic value comes from the fitted mixture CDF, the empirical value
from counting Monte Carlo samples below the threshold.
"""

from typing import Sequence, Tuple

import numpy as np
from scipy.stats import binomtest

from channel import ChannelSampleSet, db_to_linear
from mixture import NakagamiMixture, mixture_cdf

from .models import OutageCurve

CONFIDENCE_LEVEL = 0.95


def power_threshold(rho_db: float, r_th: "float | np.ndarray") -> "float | np.ndarray":
    """h^2 threshold (2^R_th - 1) / rho"""
    r_arr = np.asarray(r_th, dtype=float)
    if np.any(r_arr < 0) or not np.all(np.isfinite(r_arr)):
        raise ValueError("Rate thresholds must be finite and non-negative")
    threshold = np.expm1(r_arr * np.log(2.0)) / db_to_linear(rho_db)
    return float(threshold) if np.ndim(threshold) == 0 else threshold


def outage_analytic(
    mixture: NakagamiMixture, rho_db: float, r_th: "float | np.ndarray"
) -> "float | np.ndarray":
    """1 - sum_i omega_i Gamma(m_i, m_i (2^R_th - 1) / (Omega_i rho)) / Gamma(m_i)"""
    return mixture_cdf(mixture, np.sqrt(power_threshold(rho_db, r_th)))


def _wilson_halfwidth(below: int, total: int) -> float:
    if below == 0:
        # one-sided 95% upper bound
        interval = binomtest(0, total).proportion_ci(
            2 * CONFIDENCE_LEVEL - 1, method="wilson"
        )
        return float(interval.high)
    interval = binomtest(below, total).proportion_ci(CONFIDENCE_LEVEL, method="wilson")
    return float(interval.high - interval.low) / 2.0


def _as_samples(
    samples: "ChannelSampleSet | np.ndarray | Sequence[float]",
) -> np.ndarray:
    if isinstance(samples, ChannelSampleSet):
        values = samples.samples
    else:
        values = np.asarray(samples, dtype=float)
    if values.size == 0:
        raise ValueError("Empirical outage needs at least one sample")
    return values


def outage_empirical(
    samples: "ChannelSampleSet | np.ndarray | Sequence[float]",
    rho_db: float,
    r_th: float,
) -> Tuple[float, float]:
    """Fraction of samples whose rate falls below r_th and its Wilson half-width.

    With no sample below the threshold the OP is 0 and the half-width is the
    one-sided 95% Wilson upper bound.
    """
    values = _as_samples(samples)
    below = int(np.count_nonzero(np.square(values) < power_threshold(rho_db, r_th)))
    return below / values.size, _wilson_halfwidth(below, values.size)


def analytic_curve(
    mixture: NakagamiMixture, rho_db: float, rate_grid: Sequence[float]
) -> OutageCurve:
    rates = np.asarray(rate_grid, dtype=float)
    op = np.atleast_1d(outage_analytic(mixture, rho_db, rates))
    return OutageCurve(
        rate_grid=list(map(float, rate_grid)),
        op_values=np.maximum.accumulate(op).tolist(),
        method="mixture-analytic",
    )


def empirical_curve(
    samples: "ChannelSampleSet | np.ndarray | Sequence[float]",
    rho_db: float,
    rate_grid: Sequence[float],
) -> OutageCurve:
    """Monte Carlo reference curve; sorting once makes each point a binary search"""
    power = np.sort(np.square(_as_samples(samples)))
    rates = np.asarray(rate_grid, dtype=float)
    thresholds = np.atleast_1d(power_threshold(rho_db, rates))
    counts = np.searchsorted(power, thresholds, side="left")

    return OutageCurve(
        rate_grid=list(map(float, rate_grid)),
        op_values=[int(k) / power.size for k in counts],
        ci_halfwidth=[_wilson_halfwidth(int(k), power.size) for k in counts],
        method="monte-carlo",
    )
