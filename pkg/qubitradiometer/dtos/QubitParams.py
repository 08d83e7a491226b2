# Standard library
import math
from dataclasses import dataclass

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.errors import ValidationError
except ImportError:
    import constants
    from errors import ValidationError


@dataclass(frozen=True)
class QubitParams:
    gamma_2r: float = 1 / constants.T2R
    t1: float = constants.T1
    p_e_ini: float = constants.P_E_INI
    p_read_e_given_g: float = constants.P_READ_E_GIVEN_G
    p_read_g_given_e: float = constants.P_READ_G_GIVEN_E
    f_ge: float = constants.F_GE
    f_ef: float = constants.F_EF
    delta_gamma_2r: float = (
        constants.DETECTION_FLOOR
        * constants.TWO_PI
        * (constants.KAPPA_R_C_HZ + constants.KAPPA_R_I_HZ)
    )

    def __post_init__(self):
        if not (math.isfinite(self.gamma_2r) and self.gamma_2r >= 0):
            raise ValidationError("gamma_2r must be finite and >= 0")
        if not self.t1 > 0:
            raise ValidationError("t1 must be positive")
        for name in ("p_e_ini", "p_read_e_given_g", "p_read_g_given_e"):
            if not 0 <= getattr(self, name) < 0.5:
                raise ValidationError(f"{name} must lie in [0, 0.5)")
        if not self.delta_gamma_2r > 0:
            raise ValidationError("delta_gamma_2r must be positive")
        if not self.f_ge > self.f_ef:
            raise ValidationError("f_ge must exceed f_ef (negative anharmonicity)")
