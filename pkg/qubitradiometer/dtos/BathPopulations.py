# Standard library
import math
from dataclasses import dataclass, fields, replace

# Third party
from typing_extensions import Self

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.errors import ValidationError
except ImportError:
    import constants
    from errors import ValidationError


@dataclass(frozen=True)
class BathPopulations:
    n_vts: float = constants.N_VTS
    n_ext: float = constants.N_EXT
    n_add: float = 0.0
    n_loss: float = constants.N_LOSS
    t_loss: float = constants.T_LOSS
    t_leak: float = constants.T_LEAK

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if not (math.isfinite(value) and value >= 0):
                raise ValidationError(f"{field.name} must be finite and >= 0")
        if not 0 < self.t_loss <= 1:
            raise ValidationError("t_loss must lie in (0, 1]")
        if not 0 <= self.t_leak < 1:
            raise ValidationError("t_leak must lie in [0, 1)")

    @property
    def n_para(self) -> float:
        """Parasitic thermal occupation referred to the antenna output."""
        return self.n_loss * (1 - self.t_loss) / self.t_loss + self.n_vts * self.t_leak

    def with_(self, **changes) -> Self:
        return replace(self, **changes)
