# Standard library
from dataclasses import dataclass

# Third party
import numpy as np

# Local
try:
    from qubitradiometer.dtos.FitLine import FitLine
    from qubitradiometer.dtos.Measurement import Measurement
except ImportError:
    from dtos.FitLine import FitLine
    from dtos.Measurement import Measurement


@dataclass(frozen=True, eq=False)
class EtaProfile:
    """Measured transmission efficiency η_a(Δ_a) with its full covariance."""

    detunings: np.ndarray
    eta: np.ndarray
    covariance: np.ndarray
    far_mask: np.ndarray
    reference_slope: Measurement
    lines: tuple[FitLine, ...] = ()

    @property
    def sigma(self) -> np.ndarray:
        return np.sqrt(np.diag(self.covariance))
