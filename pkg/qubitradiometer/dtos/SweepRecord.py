# Standard library
import math
from dataclasses import dataclass
from typing import Optional

# Third party
from typing_extensions import Literal

# Local
try:
    from qubitradiometer.errors import ValidationError
except ImportError:
    from errors import ValidationError

CONTROLS = ("n_add", "n_vts")
COLUMNS = ("delta_a_rad_s", "control_name", "control_value", "n_r_eff", "sigma")


@dataclass(frozen=True)
class SweepRecord:
    delta_a: float
    control_name: Literal["n_add", "n_vts"]
    control_value: float
    n_r_eff: float
    sigma: Optional[float] = None

    def __post_init__(self):
        if self.control_name not in CONTROLS:
            raise ValidationError(f"control_name must be one of {CONTROLS}")
        if self.sigma is not None and math.isnan(self.sigma):
            object.__setattr__(self, "sigma", None)

    def to_row(self) -> dict:
        return {
            "delta_a_rad_s": self.delta_a,
            "control_name": self.control_name,
            "control_value": self.control_value,
            "n_r_eff": self.n_r_eff,
            "sigma": self.sigma,
        }
