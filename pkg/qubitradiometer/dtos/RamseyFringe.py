# Standard library
from dataclasses import dataclass
from typing import Optional

# Third party
import numpy as np

# Local
try:
    from qubitradiometer.errors import ValidationError
except ImportError:
    from errors import ValidationError


@dataclass(frozen=True, eq=False)
class RamseyFringe:
    phases: np.ndarray
    p_click: np.ndarray  # probability of reporting g at each phase
    n_rep: int = 1
    counts: Optional[np.ndarray] = None  # (n_phases, 2) array of [g, e] counts
    amplitude: Optional[float] = None
    phase_offset: Optional[float] = None
    amp_sigma: Optional[float] = None

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=float)
        p_click = np.asarray(self.p_click, dtype=float)
        if phases.ndim != 1 or phases.shape != p_click.shape:
            raise ValidationError("phases and p_click must be 1-D and equal length")
        if np.any((p_click < 0) | (p_click > 1)):
            raise ValidationError("p_click must lie in [0, 1]")
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "p_click", p_click)
        if self.counts is not None:
            counts = np.asarray(self.counts)
            if counts.shape != (phases.size, 2) or np.any(counts < 0):
                raise ValidationError("counts must be a nonnegative (n_phases, 2) array")
            if np.any(counts.sum(axis=1) != self.n_rep):
                raise ValidationError("counts must sum to n_rep at every phase")
            object.__setattr__(self, "counts", counts)

    @property
    def observed(self) -> np.ndarray:
        if self.counts is None:
            return self.p_click

        return self.counts[:, 0] / self.n_rep
