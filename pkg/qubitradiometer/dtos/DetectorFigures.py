# Standard library
from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class DetectorFigures:
    """Single-shot photon-detector view of one Ramsey sequence.

    Unprimed figures are referred to the readout mode and primed ones fold
    in the parasitic population `n_r_para`.
    """

    eta: float
    p_dc: float
    eta_prime: float
    p_dc_prime: float
    dynamic_range_db: float
    tau_p: float
    n_r_para: float = 0.0

    @property
    def n_click_slope(self) -> float:
        """Clicks per unit incoming photon rate, η·τ_p."""
        return self.eta * self.tau_p

    @property
    def dark_count_rate(self) -> float:
        return self.p_dc / self.tau_p

    def to_dict(self) -> dict:
        return asdict(self)
