# Standard library
from dataclasses import dataclass

# Local
try:
    from qubitradiometer.errors import ValidationError
except ImportError:
    from errors import ValidationError


@dataclass(frozen=True)
class PrecisionInputs:
    n_sys_lin: float
    bandwidth: float  # rad/s
    t_int: float  # s
    delta_g_over_g: float = 0.0

    def __post_init__(self):
        if not self.bandwidth > 0:
            raise ValidationError("bandwidth must be positive")
        if not self.t_int > 0:
            raise ValidationError("t_int must be positive")
        if self.n_sys_lin < 0:
            raise ValidationError("n_sys_lin must be >= 0")
        if self.delta_g_over_g < 0:
            raise ValidationError("delta_g_over_g must be >= 0")
