"""
Equivalent magnitude channel of the RIS link under MRT with phase errors
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from config import get_settings
from sampling import RngStream, sample_von_mises

from .links import LinkModel
from .models import ChannelSampleSet, ScenarioConfig, db_to_linear

# Complex coefficients per batch; batch size depends only on (N, M)
_BATCH_ELEMENTS = 1 << 21
REFERENCE_ANTENNA = 0


def apply_phase_design(
    rng: RngStream,
    g: np.ndarray,
    h2: np.ndarray,
    hsd: np.ndarray,
    kappa: float,
    reference_antenna: int = REFERENCE_ANTENNA,
) -> np.ndarray:
    """phi_n = angle(hsd_q) - angle(g_qn) - angle(h2_n) + Theta_n for antenna q.

    Works on one realization (g: N x M) or a stack (g: t x N x M). A blocked
    direct path is all zeros and np.angle(0) == 0, which drops that term.
    """
    m = g.shape[-1]
    if not 0 <= reference_antenna < m:
        raise ValueError(f"Reference antenna {reference_antenna} outside 0..{m - 1}")

    theta = sample_von_mises(rng, kappa, h2.shape)
    return (
        np.angle(hsd[..., reference_antenna])[..., np.newaxis]
        - np.angle(g[..., reference_antenna])
        - np.angle(h2)
        + theta
    )


def composite_row(
    g: np.ndarray, h2: np.ndarray, hsd: np.ndarray, phases: np.ndarray
) -> np.ndarray:
    """c = h2^T Phi G + hsd^T, one length-M row per realization"""
    weighted = h2 * np.exp(1j * phases)
    return np.einsum("...n,...nm->...m", weighted, g) + hsd


def equivalent_magnitude(
    g: np.ndarray, h2: np.ndarray, hsd: np.ndarray, phases: np.ndarray
) -> np.ndarray:
    """MRT collapses |c w_opt| to the Euclidean norm of c"""
    return np.linalg.norm(composite_row(g, h2, hsd, phases), axis=-1)


def snr_from_magnitude(h: "float | np.ndarray", rho_db: float) -> "float | np.ndarray":
    if np.any(np.asarray(h) < 0):
        raise ValueError("Channel magnitude must be non-negative")
    return db_to_linear(rho_db) * np.square(h)


def batch_plan(config: ScenarioConfig) -> List[Tuple[int, int]]:
    """(start, count) per batch; a pure function of the scenario"""
    per_realization = config.n_elements * (config.m_antennas + 1)
    size = max(1, _BATCH_ELEMENTS // per_realization)
    total = config.sample_count
    return [(start, min(size, total - start)) for start in range(0, total, size)]


def _simulate_batch(
    model: LinkModel, rng: RngStream, count: int, kappa: float
) -> np.ndarray:
    g, h2, hsd = model.draw(rng, count)
    phases = apply_phase_design(rng, g, h2, hsd, kappa)
    return equivalent_magnitude(g, h2, hsd, phases)


def simulate_equivalent_channel(
    rng: RngStream,
    config: ScenarioConfig,
    workers: Optional[int] = None,
) -> ChannelSampleSet:
    """Draw t realizations of h with fresh links and phase errors each.

    Batches run on a thread pool (numpy releases the GIL in the heavy
    kernels); batch b always uses ``rng.derive(b)``, so the output does not
    depend on the worker count.
    """
    model = LinkModel.for_config(config)
    plan = batch_plan(config)
    workers = workers or get_settings().resolved_threads()
    workers = max(1, min(workers, len(plan)))

    logger.info(
        f"Simulating {config.sample_count} realizations "
        f"(N={config.n_elements}, M={config.m_antennas}, kappa={config.kappa}) "
        f"in {len(plan)} batches on {workers} workers"
    )
    started = time.perf_counter()

    samples = np.empty(config.sample_count, dtype=float)

    def run(index: int) -> None:
        start, count = plan[index]
        batch_rng = rng.derive(index)
        samples[start : start + count] = _simulate_batch(
            model, batch_rng, count, config.kappa
        )
        logger.debug(f"Batch {index} done ({count} realizations)")

    if workers == 1:
        for index in range(len(plan)):
            run(index)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(len(plan))))

    logger.info(f"Simulation finished in {time.perf_counter() - started:.2f}s")

    return ChannelSampleSet(
        samples=samples,
        config_digest=config.digest(),
        **rng.identity(),
    )
