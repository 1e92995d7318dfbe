"""Sample generators and fixture types shared by the statistical tests."""

from typing import Callable, Sequence

import numpy as np

from channel import ScenarioConfig
from sampling import RngStream

ScenarioBuilder = Callable[..., ScenarioConfig]


def nakagami_samples(rng: RngStream, m: float, omega: float, size: int) -> np.ndarray:
    """h = sqrt(Gamma(m, omega / m)) is Nakagami-m with spread omega"""
    return np.sqrt(rng.generator.gamma(m, omega / m, size))


def mixture_samples(
    rng: RngStream,
    weights: Sequence[float],
    shapes: Sequence[float],
    spreads: Sequence[float],
    size: int,
) -> np.ndarray:
    labels = rng.generator.choice(len(weights), size=size, p=weights)
    out = np.empty(size)
    for i, (m, omega) in enumerate(zip(shapes, spreads)):
        chosen = labels == i
        out[chosen] = nakagami_samples(rng, m, omega, int(np.count_nonzero(chosen)))
    return out
