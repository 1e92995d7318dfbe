"""
EM fitting of a two-component Nakagami-m mixture

E-step responsibilities come from log-sum-exp of the weighted log densities;
the M-step uses the weighted second moment for Omega_i, the weighted log
moment Delta_i and the closed-form m-update
m = (1 + sqrt(1 + 4 Delta / 3)) / (4 Delta). The exact M-step (solving
log m - digamma(m) = Delta) backs up iterations where the closed form would
lower the likelihood.
"""

from typing import Optional, Tuple

import numpy as np
from loguru import logger
from scipy.optimize import brentq
from scipy.special import digamma, logsumexp

from errors import ComponentCollapseError, DegenerateSampleError
from sampling import RngStream

from .density import component_log_densities
from .models import M_MAX, M_MIN, EmTrace, FitOptions, NakagamiMixture, likelihood_slack

MIN_SAMPLES = 10
COLLAPSE_FRACTION = 1e-6
INIT_SPREAD_PERTURBATION = 0.10
INIT_WEIGHT_RANGE = (0.2, 0.8)


def _as_samples(samples: "np.ndarray | list") -> np.ndarray:
    values = np.asarray(getattr(samples, "samples", samples), dtype=float)
    if values.ndim != 1:
        raise ValueError("Samples must be one-dimensional")
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise DegenerateSampleError("Samples must be finite and non-negative")
    return values


def closed_form_m(delta: "float | np.ndarray") -> "float | np.ndarray":
    """Approximate root of log m - digamma(m) = Delta, clamped to [0.5, 200]"""
    delta_arr = np.asarray(delta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        m = (1.0 + np.sqrt(1.0 + 4.0 * delta_arr / 3.0)) / (4.0 * delta_arr)
    m = np.where(delta_arr > 0, m, np.inf)
    m = np.clip(m, M_MIN, M_MAX)
    return float(m) if np.ndim(m) == 0 else m


def exact_m(delta: float) -> float:
    """Root of log m - digamma(m) = Delta, clamped to [0.5, 200]"""
    if delta <= 0:
        return M_MAX

    def gap(m: float) -> float:
        return float(np.log(m) - digamma(m) - delta)

    # log m - digamma(m) decreases monotonically from +inf to 0
    if gap(M_MAX) > 0:
        return M_MAX
    if gap(M_MIN) < 0:
        return M_MIN
    return float(brentq(gap, M_MIN, M_MAX, xtol=1e-12, rtol=1e-12))


def _weighted_moments(samples: np.ndarray, weights: np.ndarray) -> Tuple[float, float]:
    """(Omega, Delta) for one responsibility row; zeros excluded from the log moment"""
    power = np.square(samples)
    mass = float(np.sum(weights))
    omega = float(np.sum(weights * power) / mass)

    positive = samples > 0
    log_mass = float(np.sum(weights[positive]))
    if log_mass <= 0:
        return omega, 0.0
    mean_log = float(np.sum(weights[positive] * np.log(power[positive])) / log_mass)
    return omega, float(np.log(omega) - mean_log)


def mle_initialize(samples: "np.ndarray | list", rng: RngStream) -> NakagamiMixture:
    """Single-population Nakagami MLE split into two perturbed components.

    Both components start at (m_hat, Omega_hat) with the spreads moved by
    -/+10% so EM can separate them; weights are (u, 1 - u), u ~ U[0.2, 0.8].
    """
    values = _as_samples(samples)
    if values.size < MIN_SAMPLES:
        raise DegenerateSampleError(
            f"Need at least {MIN_SAMPLES} samples, got {values.size}"
        )
    positive = values[values > 0]
    if positive.size == 0 or np.all(positive == positive[0]):
        raise DegenerateSampleError("Samples are constant; the log moment vanishes")

    omega_hat, delta = _weighted_moments(values, np.ones_like(values))
    if not delta > 0:
        raise DegenerateSampleError(f"Non-positive log moment Delta={delta}")
    m_hat = closed_form_m(delta)

    u = float(rng.uniform(*INIT_WEIGHT_RANGE))
    logger.debug(
        f"MLE initialisation: m={m_hat:.4f}, Omega={omega_hat:.4e}, "
        f"weights=({u:.3f}, {1 - u:.3f})"
    )
    return NakagamiMixture.from_arrays(
        (u, 1.0 - u),
        (m_hat, m_hat),
        (
            omega_hat * (1.0 - INIT_SPREAD_PERTURBATION),
            omega_hat * (1.0 + INIT_SPREAD_PERTURBATION),
        ),
    )


def e_step(
    samples: "np.ndarray | list", mixture: NakagamiMixture
) -> Tuple[np.ndarray, int, float]:
    """Responsibilities tau (2 x t), the underflow count and the log-likelihood.

    A sample where both weighted densities underflow gets (0.5, 0.5).
    """
    values = _as_samples(samples)
    log_joint = component_log_densities(values, mixture)
    log_norm = logsumexp(log_joint, axis=0)

    underflow = ~np.isfinite(log_norm)
    with np.errstate(invalid="ignore"):
        tau = np.exp(log_joint - log_norm)
    n_underflow = int(np.count_nonzero(underflow))
    if n_underflow:
        tau[:, underflow] = 0.5
        logger.warning(
            f"Density underflow at {n_underflow} samples; "
            "responsibilities set to 0.5"
        )

    # renormalise so columns sum to one to machine precision
    tau /= np.sum(tau, axis=0, keepdims=True)
    log_lik = float(np.sum(log_norm)) if not n_underflow else float("-inf")
    return tau, n_underflow, log_lik


def m_step(
    samples: "np.ndarray | list",
    tau: np.ndarray,
    exact: bool = False,
    trace: Optional[EmTrace] = None,
) -> NakagamiMixture:
    values = _as_samples(samples)
    tau = np.asarray(tau, dtype=float)
    if tau.shape != (2, values.size):
        raise ValueError(
            f"Responsibilities must have shape (2, {values.size}), got {tau.shape}"
        )

    t = values.size
    masses = np.sum(tau, axis=1)
    weights = masses / np.sum(masses)

    collapsed = [i for i, mass in enumerate(masses) if mass < COLLAPSE_FRACTION * t]
    if collapsed:
        raise ComponentCollapseError(
            f"Component(s) {collapsed} collapsed: masses={masses.tolist()}, "
            f"weights={weights.tolist()}",
            trace=trace,
        )

    omegas, shapes = [], []
    for row in tau:
        omega, delta = _weighted_moments(values, row)
        omegas.append(omega)
        shapes.append(exact_m(delta) if exact else closed_form_m(delta))

    return NakagamiMixture.from_arrays(weights, shapes, omegas)


def _relative_changes(old: NakagamiMixture, new: NakagamiMixture) -> dict:
    return {
        "omega": [abs(n - o) / o for o, n in zip(old.spreads, new.spreads)],
        "m": [abs(n - o) / o for o, n in zip(old.shapes, new.shapes)],
    }


def fit(
    samples: "np.ndarray | list",
    rng: RngStream,
    epsilon: float = 1e-3,
    max_iter: int = 500,
    options: Optional[FitOptions] = None,
) -> Tuple[NakagamiMixture, EmTrace]:
    """Run EM from the MLE initialisation until every relative change of
    Omega_i and m_i is below epsilon, or max_iter iterations.

    Samples are sorted first so the result does not depend on their order.
    Without convergence the iterate with the highest likelihood is returned.
    """
    options = options or FitOptions(epsilon=epsilon, max_iter=max_iter)
    values = np.sort(_as_samples(samples))
    trace = EmTrace()

    current = mle_initialize(values, rng)
    tau, n_underflow, log_lik = e_step(values, current)
    trace.log_likelihood_history.append(log_lik)
    trace.underflow_samples = max(trace.underflow_samples, n_underflow)
    best, best_log_lik = current, log_lik

    while trace.iterations < options.max_iter:
        candidate = m_step(values, tau, trace=trace)
        next_tau, n_underflow, next_log_lik = e_step(values, candidate)

        lowered = next_log_lik < log_lik - likelihood_slack(log_lik)
        if options.monotone_fallback and lowered:
            logger.debug(
                f"Iteration {trace.iterations + 1}: closed-form update lowered "
                f"the likelihood ({log_lik:.6f} -> {next_log_lik:.6f}); "
                "using the exact m-update"
            )
            candidate = m_step(values, tau, exact=True, trace=trace)
            next_tau, n_underflow, next_log_lik = e_step(values, candidate)
            trace.exact_m_steps += 1

        trace.iterations += 1
        trace.final_rel_change = _relative_changes(current, candidate)
        trace.log_likelihood_history.append(next_log_lik)
        trace.underflow_samples = max(trace.underflow_samples, n_underflow)

        current, tau, log_lik = candidate, next_tau, next_log_lik
        if log_lik >= best_log_lik:
            best, best_log_lik = current, log_lik

        logger.debug(
            f"EM iteration {trace.iterations}: LL={log_lik:.6f} "
            f"dOmega={trace.final_rel_change['omega']} dm={trace.final_rel_change['m']}"
        )

        changes = trace.final_rel_change["omega"] + trace.final_rel_change["m"]
        if all(change < options.epsilon for change in changes):
            trace.converged = True
            best = current
            break

    if not trace.converged and options.max_iter > 0:
        logger.warning(
            f"EM did not converge within {options.max_iter} iterations; "
            "returning best iterate"
        )

    logger.info(
        f"EM finished after {trace.iterations} iterations "
        f"(converged={trace.converged}, LL={trace.log_likelihood_history[-1]:.4f})"
    )
    return best.sorted(), trace
