# Standard library
import math
from dataclasses import dataclass, replace

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
class ModeParams:
    """Readout cavity, antenna and pump. Frequencies in Hz, rates in rad/s."""

    f_a: float
    f_r: float
    f_p: float
    chi: float
    kappa_r_c: float
    kappa_r_i: float
    kappa_a_c: float
    kappa_a_i: float
    conversion_efficiency: float = 1.0

    def __post_init__(self):
        for name in ("f_a", "f_r", "f_p"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive")
        for name in ("chi", "kappa_r_c", "kappa_r_i", "kappa_a_c", "kappa_a_i"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValidationError(f"{name} must be a finite rate >= 0")
        if self.kappa_r <= 0:
            raise ValidationError("kappa_r must be positive")
        if self.kappa_a <= 0:
            raise ValidationError("kappa_a must be positive")
        if not 0 < self.conversion_efficiency <= 1:
            raise ValidationError("conversion_efficiency must lie in (0, 1]")

    @classmethod
    def from_linewidths(
        cls,
        f_a: float = constants.F_A,
        f_r: float = constants.F_R,
        f_p: float = constants.F_P,
        chi_hz: float = constants.CHI_HZ,
        kappa_r_c_hz: float = constants.KAPPA_R_C_HZ,
        kappa_r_i_hz: float = constants.KAPPA_R_I_HZ,
        kappa_a_c_hz: float = constants.KAPPA_A_C_HZ,
        kappa_a_i_hz: float = constants.KAPPA_A_I_HZ,
        conversion_efficiency: float = 1.0,
    ) -> "ModeParams":
        """Builds the record from linewidths quoted as κ/2π in Hz."""

        return cls(
            f_a=f_a,
            f_r=f_r,
            f_p=f_p,
            chi=constants.TWO_PI * chi_hz,
            kappa_r_c=constants.TWO_PI * kappa_r_c_hz,
            kappa_r_i=constants.TWO_PI * kappa_r_i_hz,
            kappa_a_c=constants.TWO_PI * kappa_a_c_hz,
            kappa_a_i=constants.TWO_PI * kappa_a_i_hz,
            conversion_efficiency=conversion_efficiency,
        )

    @property
    def kappa_r(self) -> float:
        return self.kappa_r_c + self.kappa_r_i

    @property
    def kappa_a(self) -> float:
        return self.kappa_a_c + self.kappa_a_i

    @property
    def gamma(self) -> float:
        """Internal-loss fraction of the antenna linewidth."""
        return self.kappa_a_i / self.kappa_a

    @property
    def coupling(self) -> float:
        return math.sqrt(self.kappa_a_c * self.kappa_r_c)

    @property
    def response_scale(self) -> float:
        """κ_a κ_r,c / κ_r², the white-noise conversion into readout photons."""
        return self.kappa_a * self.kappa_r_c / self.kappa_r**2

    @property
    def delta_a(self) -> float:
        return constants.TWO_PI * (self.f_a - self.f_r - self.f_p)

    def with_detuning(self, delta_a: float) -> Self:
        return replace(self, f_a=self.f_r + self.f_p + delta_a / constants.TWO_PI)
