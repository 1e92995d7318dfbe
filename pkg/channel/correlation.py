import numpy as np
from scipy.spatial.distance import cdist

from sampling import CorrelationMatrix

from .models import RisGeometry

_INTEGER_SNAP = 1e-12


def build_correlation_matrix(geometry: RisGeometry) -> CorrelationMatrix:
    """Isotropic-scattering correlation r_ab = sinc(2 ||u_a - u_b|| / lambda).

    Entries whose argument is a non-zero integer are set to exactly zero, so
    half-wavelength multiples decorrelate exactly.
    """
    positions = geometry.element_positions()
    argument = 2.0 * cdist(positions, positions) / geometry.wavelength
    entries = np.sinc(argument)

    nearest = np.rint(argument)
    tolerance = _INTEGER_SNAP * np.maximum(nearest, 1.0)
    on_zero = (nearest > 0) & (np.abs(argument - nearest) <= tolerance)
    entries[on_zero] = 0.0
    np.fill_diagonal(entries, 1.0)

    return CorrelationMatrix(entries)
