# Standard library
from dataclasses import dataclass

# Third party
import numpy as np


@dataclass(frozen=True, eq=False)
class FitLine:
    slope: float
    intercept: float
    covariance: np.ndarray  # over (intercept, slope)
    chi2: float = 0.0
    dof: int = 0
    weighted: bool = True

    @property
    def slope_sigma(self) -> float:
        return float(np.sqrt(self.covariance[1, 1]))

    @property
    def intercept_sigma(self) -> float:
        return float(np.sqrt(self.covariance[0, 0]))

    def __call__(self, x):
        return self.intercept + self.slope * np.asarray(x)
