"""
Goodness of fit between outage curves
"""

from typing import Sequence

import numpy as np
from loguru import logger

from errors import ZeroVarianceReferenceError

from .models import NmseDomain, OutageCurve


def _values(curve: "OutageCurve | Sequence[float] | np.ndarray") -> np.ndarray:
    if isinstance(curve, OutageCurve):
        return np.asarray(curve.op_values, dtype=float)
    return np.asarray(curve, dtype=float)


def nmse(
    reference: "OutageCurve | Sequence[float] | np.ndarray",
    candidate: "OutageCurve | Sequence[float] | np.ndarray",
    domain: NmseDomain = "linear",
) -> float:
    """1 - sum (ref - cand)^2 / sum (ref - mean(ref))^2; 1 is a perfect fit.

    In ``log10`` mode both curves are compared as log10(OP) on the points
    where both are positive.
    """
    if isinstance(reference, OutageCurve) and isinstance(candidate, OutageCurve):
        if not np.allclose(
            reference.rate_grid, candidate.rate_grid, rtol=1e-12, atol=0.0
        ):
            raise ValueError("Curves must share the same rate grid")

    ref = _values(reference)
    cand = _values(candidate)
    if ref.shape != cand.shape:
        raise ValueError(f"Curve lengths differ: {ref.size} vs {cand.size}")

    if domain == "log10":
        keep = (ref > 0) & (cand > 0)
        dropped = int(ref.size - np.count_nonzero(keep))
        if dropped:
            logger.debug(f"log10 NMSE ignores {dropped} grid points with zero outage")
        ref, cand = np.log10(ref[keep]), np.log10(cand[keep])
    elif domain != "linear":
        raise ValueError(f"Unknown NMSE domain '{domain}'")

    spread = float(np.sum(np.square(ref - np.mean(ref)))) if ref.size else 0.0
    if spread == 0.0:
        raise ZeroVarianceReferenceError(
            "Reference curve is constant; NMSE is undefined"
        )
    return 1.0 - float(np.sum(np.square(ref - cand))) / spread
