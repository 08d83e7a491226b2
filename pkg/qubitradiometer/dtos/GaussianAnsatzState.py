# Standard library
import math
from dataclasses import dataclass

# Third party
import numpy as np


@dataclass(frozen=True)
class GaussianAnsatzState:
    """Coefficients of E·exp(-a|α|² - b|β|² - c α*β - d αβ*) at time t."""

    a: complex
    b: complex
    c: complex
    d: complex
    e: complex
    t: float = 0.0

    @classmethod
    def from_covariance(
        cls, sigma: np.ndarray, log_norm: complex, t: float = 0.0
    ) -> "GaussianAnsatzState":
        m = np.linalg.inv(np.asarray(sigma, dtype=complex))
        e = np.exp(log_norm) * np.linalg.det(m) / math.pi**2
        return cls(a=m[0, 0], b=m[1, 1], c=m[1, 0], d=m[0, 1], e=e, t=t)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.d], [self.c, self.b]], dtype=complex)

    @property
    def determinant(self) -> complex:
        return self.a * self.b - self.c * self.d

    @property
    def norm(self) -> complex:
        """Integral over both phase spaces, E·π²/(ab - cd)."""
        return self.e * math.pi**2 / self.determinant

    @property
    def is_finite(self) -> bool:
        return all(np.isfinite(x) for x in (self.a, self.b, self.c, self.d, self.e))

    @property
    def is_integrable(self) -> bool:
        return self.a.real > 0 and self.b.real > 0 and abs(self.determinant) > 0
