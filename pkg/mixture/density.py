"""
Nakagami-m densities, mixture CDF and log-likelihood, all in log domain
"""

import numpy as np
from scipy.special import gammainc, gammaln, logsumexp

from .models import M_MIN, NakagamiMixture


def _check_parameters(m: float, omega: float) -> None:
    if not m >= M_MIN:
        raise ValueError(f"Nakagami shape must be >= {M_MIN}, got {m}")
    if not omega > 0:
        raise ValueError(f"Nakagami spread must be positive, got {omega}")


def nakagami_log_pdf(r: "float | np.ndarray", m: float, omega: float) -> np.ndarray:
    """log of 2 m^m r^(2m-1) exp(-m r^2 / Omega) / (Gamma(m) Omega^m); -inf at r = 0"""
    _check_parameters(m, omega)
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_r = np.log(r)
        out = (
            np.log(2.0)
            + m * np.log(m)
            - gammaln(m)
            - m * np.log(omega)
            + (2.0 * m - 1.0) * log_r
            - m * r * r / omega
        )
    return np.where(r > 0, out, -np.inf)


def nakagami_component_pdf(
    r: "float | np.ndarray", m: float, omega: float
) -> "float | np.ndarray":
    if np.any(np.asarray(r) <= 0):
        raise ValueError("Component density is defined for r > 0")
    density = np.exp(nakagami_log_pdf(r, m, omega))
    return float(density) if np.ndim(density) == 0 else density


def component_log_densities(
    samples: np.ndarray, mixture: NakagamiMixture
) -> np.ndarray:
    """2 x t matrix of log(omega_i phi_i(h_j))"""
    samples = np.asarray(samples, dtype=float)
    rows = []
    for component in mixture.components:
        with np.errstate(divide="ignore"):
            log_weight = np.log(component.weight)
        log_pdf = nakagami_log_pdf(samples, component.m, component.omega)
        rows.append(log_weight + log_pdf)
    return np.vstack(rows)


def mixture_log_pdf(r: "float | np.ndarray", mixture: NakagamiMixture) -> np.ndarray:
    r = np.atleast_1d(np.asarray(r, dtype=float))
    return logsumexp(component_log_densities(r, mixture), axis=0)


def mixture_pdf(
    r: "float | np.ndarray", mixture: NakagamiMixture
) -> "float | np.ndarray":
    density = np.exp(mixture_log_pdf(r, mixture))
    return float(density[0]) if np.ndim(r) == 0 else density


def mixture_cdf(
    mixture: NakagamiMixture, r: "float | np.ndarray"
) -> "float | np.ndarray":
    """sum_i omega_i P(m_i, m_i r^2 / Omega_i)

    P is the regularized lower incomplete gamma.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise ValueError("CDF argument must be non-negative")
    squared = np.square(r_arr)
    total = sum(
        c.weight * gammainc(c.m, c.m * squared / c.omega) for c in mixture.components
    )
    total = np.clip(total, 0.0, 1.0)
    return float(total) if np.ndim(total) == 0 else total


def log_likelihood(mixture: NakagamiMixture, samples: "np.ndarray | list") -> float:
    """Sum of log mixture densities; -inf if some sample has zero density"""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        return 0.0
    return float(np.sum(mixture_log_pdf(samples, mixture)))
