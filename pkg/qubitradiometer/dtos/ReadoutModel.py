# Standard library
from dataclasses import dataclass

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.dtos.QubitParams import QubitParams
except ImportError:
    import constants
    from dtos.QubitParams import QubitParams


@dataclass(frozen=True)
class ReadoutModel:
    p_e_ini: float = constants.P_E_INI
    p_read_e_given_g: float = constants.P_READ_E_GIVEN_G
    p_read_g_given_e: float = constants.P_READ_G_GIVEN_E

    @classmethod
    def from_qubit(cls, qubit: QubitParams) -> "ReadoutModel":
        return cls(qubit.p_e_ini, qubit.p_read_e_given_g, qubit.p_read_g_given_e)

    @property
    def a0(self) -> float:
        """Reported g-minus-e population difference of the prepared ground state."""
        p_g = (1 - self.p_e_ini) * (1 - self.p_read_e_given_g) + (
            self.p_e_ini * self.p_read_g_given_e
        )
        return 2 * p_g - 1

    @property
    def fringe_contrast(self) -> float:
        return (1 - 2 * self.p_e_ini) * (
            1 - self.p_read_e_given_g - self.p_read_g_given_e
        )

    def read_g(self, p_g_true):
        """Probability of reporting g given the true ground-state population."""
        return p_g_true * (1 - self.p_read_e_given_g) + (1 - p_g_true) * (
            self.p_read_g_given_e
        )
