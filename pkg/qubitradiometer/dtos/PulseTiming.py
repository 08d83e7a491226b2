# Standard library
from dataclasses import dataclass

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.errors import ValidationError
except ImportError:
    import constants
    from errors import ValidationError


@dataclass(frozen=True)
class PulseTiming:
    """Ramsey wait `tau` of which the first `tau_p` seconds are pumped."""

    tau: float = constants.TAU_P + constants.TAU_W
    tau_p: float = constants.TAU_P
    n_rep: int = constants.N_REP

    def __post_init__(self):
        if not 0 < self.tau_p <= self.tau:
            raise ValidationError("timing requires 0 < tau_p <= tau")
        if self.n_rep < 1:
            raise ValidationError("n_rep must be >= 1")

    @classmethod
    def from_pump_and_wait(
        cls, tau_p: float, tau_w: float = constants.TAU_W, n_rep: int = constants.N_REP
    ) -> "PulseTiming":
        if tau_w < 0:
            raise ValidationError("tau_w must be >= 0")

        return cls(tau=tau_p + tau_w, tau_p=tau_p, n_rep=n_rep)

    @property
    def tau_w(self) -> float:
        return self.tau - self.tau_p
