"""
Reproducible random streams backed by the counter-based Philox generator
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

_UINT64_MAX = 2**64 - 1


@dataclass
class RngStream:
    """A (seed, stream_id) pair owning its own numpy Generator.

    Equal (seed, stream_id, substream) triples produce identical sequences;
    distinct stream ids map to distinct SeedSequence spawn keys and are
    statistically independent. A stream is stateful once used, so workers
    must each own one (see ``derive``).
    """

    seed: int
    stream_id: int = 0
    substream: Tuple[int, ...] = ()
    _generator: Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for name, value in (("seed", self.seed), ("stream_id", self.stream_id)):
            if not 0 <= int(value) <= _UINT64_MAX:
                raise ValueError(
                    f"{name} must be an unsigned 64-bit integer, got {value}"
                )
        self.seed = int(self.seed)
        self.stream_id = int(self.stream_id)
        self.substream = tuple(int(i) for i in self.substream)
        sequence = SeedSequence(
            entropy=self.seed,
            spawn_key=(self.stream_id, *self.substream),
        )
        self._generator = Generator(Philox(sequence))

    @property
    def generator(self) -> Generator:
        return self._generator

    def derive(self, index: int) -> "RngStream":
        """Fresh independent substream, e.g. one per Monte Carlo batch"""
        if index < 0:
            raise ValueError("Substream index must be >= 0")
        return RngStream(self.seed, self.stream_id, (*self.substream, index))

    def identity(self) -> dict:
        return {
            "seed": self.seed,
            "stream_id": self.stream_id,
            "substream": list(self.substream),
        }

    # Thin wrappers so callers never reach into the generator directly
    def standard_normal(self, size: "int | Tuple[int, ...]") -> np.ndarray:
        return self._generator.standard_normal(size)

    def uniform(
        self, low: float, high: float, size: "int | Tuple[int, ...] | None" = None
    ) -> "np.ndarray | float":
        return self._generator.uniform(low, high, size)
