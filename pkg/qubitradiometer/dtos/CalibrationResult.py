# Standard library
from dataclasses import dataclass, field
from typing import Optional

# Third party
import numpy as np

# Local
try:
    from qubitradiometer.dtos.EtaProfile import EtaProfile
    from qubitradiometer.dtos.Measurement import Measurement
except ImportError:
    from dtos.EtaProfile import EtaProfile
    from dtos.Measurement import Measurement

ESTIMATES = (
    "t_loss",
    "t_leak",
    "n_ext",
    "n_loss",
    "n_para",
    "n_shot",
    "n_sys",
    "n_a",
)


@dataclass(frozen=True, eq=False)
class CalibrationResult:
    t_loss: Measurement
    t_leak: Measurement
    n_ext: Measurement
    n_loss: Measurement
    n_para: Measurement
    n_shot: Measurement
    n_sys: Measurement
    n_a: Measurement
    covariance: np.ndarray  # over ESTIMATES, in that order
    temperatures: dict[str, Measurement] = field(default_factory=dict)
    eta: Optional[EtaProfile] = None

    def estimates(self) -> dict[str, Measurement]:
        return {name: getattr(self, name) for name in ESTIMATES}

    def to_dict(self) -> dict:
        return {
            "estimates": {k: m.to_dict() for k, m in self.estimates().items()},
            "temperatures_k": {k: m.to_dict() for k, m in self.temperatures.items()},
            "covariance": {
                "order": list(ESTIMATES),
                "matrix": np.asarray(self.covariance).tolist(),
            },
        }
