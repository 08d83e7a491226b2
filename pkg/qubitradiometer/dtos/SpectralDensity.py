# Standard library
from dataclasses import dataclass

# Third party
import numpy as np

# Local
try:
    from qubitradiometer.errors import ValidationError
except ImportError:
    from errors import ValidationError


@dataclass(frozen=True, eq=False)
class SpectralDensity:
    """Occupation per unit bandwidth sampled on a detuning grid (Hz)."""

    frequency_grid: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        grid = np.asarray(self.frequency_grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValidationError("grid and values must be 1-D and of equal length")
        if grid.size > 1 and np.any(np.diff(grid) <= 0):
            raise ValidationError("frequency grid must be strictly increasing")
        if np.any(values < 0):
            raise ValidationError("spectral density must be >= 0")
        object.__setattr__(self, "frequency_grid", grid)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    def peak(self) -> tuple[float, float]:
        index = int(np.argmax(self.values))
        return float(self.frequency_grid[index]), float(self.values[index])
