# Standard library
import math
from dataclasses import dataclass

# Local
try:
    from qubitradiometer.errors import ValidationError
except ImportError:
    from errors import ValidationError


@dataclass(frozen=True)
class OracleConfig:
    epsilon: float = 1e-8  # seed covariance of the readout mode
    rtol: float = 1e-10
    atol: float = 1e-12
    max_step: float = math.inf
    method: str = "DOP853"
    isolate_cavity_when_off: bool = False
    check_convergence: bool = False
    convergence_tol: float = 1e-6

    def __post_init__(self):
        if not 0 < self.epsilon <= 1e-3:
            raise ValidationError("epsilon must lie in (0, 1e-3]")
        if not (self.rtol > 0 and self.atol > 0):
            raise ValidationError("tolerances must be positive")
        if not self.max_step > 0:
            raise ValidationError("max_step must be positive")
