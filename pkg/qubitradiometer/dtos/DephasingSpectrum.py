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
class DephasingSpectrum:
    delta_a: np.ndarray  # rad/s
    n_r_eff: np.ndarray
    sigma: Optional[np.ndarray] = None
    tau_p: Optional[float] = None

    def __post_init__(self):
        delta_a = np.asarray(self.delta_a, dtype=float)
        n_r_eff = np.asarray(self.n_r_eff, dtype=float)
        if delta_a.shape != n_r_eff.shape:
            raise ValidationError("delta_a and n_r_eff must have the same length")
        object.__setattr__(self, "delta_a", delta_a)
        object.__setattr__(self, "n_r_eff", n_r_eff)
        if self.sigma is not None:
            sigma = np.asarray(self.sigma, dtype=float)
            if sigma.shape != n_r_eff.shape:
                raise ValidationError("sigma must match n_r_eff")
            object.__setattr__(self, "sigma", sigma)

    def rows(self) -> list[dict]:
        sigma = self.sigma if self.sigma is not None else np.zeros_like(self.n_r_eff)
        return [
            {
                "tau_p_s": self.tau_p,
                "delta_a_rad_s": float(d),
                "n_r_eff": float(n),
                "sigma": float(s),
            }
            for d, n, s in zip(self.delta_a, self.n_r_eff, sigma)
        ]
