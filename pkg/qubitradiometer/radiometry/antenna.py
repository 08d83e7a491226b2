# Standard library
import logging
from typing import Optional

# Third party
import numpy as np

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.dtos import BathPopulations, ModeParams, SpectralDensity
except ImportError:
    import constants
    from dtos import BathPopulations, ModeParams, SpectralDensity

logger = logging.getLogger(__name__)


def lorentzian_transmission(params: ModeParams, offset):
    """Fraction of the blackbody reaching the antenna output at `offset` Hz
    from the antenna frequency. Peaks at 4γ(1 - γ)."""

    gamma = params.gamma
    x = 4 * np.pi * np.asarray(offset, dtype=float) / params.kappa_a
    t_a = 4 * gamma * (1 - gamma) / (1 + x**2)
    return float(t_a) if np.ndim(t_a) == 0 else t_a


def antenna_population(params: ModeParams, baths: BathPopulations) -> float:
    gamma = params.gamma
    return gamma * baths.n_vts + (1 - gamma) * (baths.n_ext + baths.n_add)


def default_grid(
    params: ModeParams, points: int = 401, half_width: float = 10.0
) -> np.ndarray:
    span = half_width * params.kappa_a / constants.TWO_PI
    return np.linspace(-span, span, points)


def antenna_output_spectrum(
    params: ModeParams, baths: BathPopulations, grid: Optional[np.ndarray] = None
) -> SpectralDensity:
    grid = default_grid(params) if grid is None else np.asarray(grid, dtype=float)
    t_a = lorentzian_transmission(params, grid)
    values = baths.n_vts * (t_a + baths.t_leak) + (baths.n_ext + baths.n_add) * (1 - t_a)
    return SpectralDensity(grid, values, label="n_a_out")


def readout_input_spectrum(
    params: ModeParams, baths: BathPopulations, grid: Optional[np.ndarray] = None
) -> SpectralDensity:
    """Occupation reaching the readout cavity after the lossy link."""

    antenna = antenna_output_spectrum(params, baths, grid)
    link = baths.t_loss * params.conversion_efficiency
    values = antenna.values * link + baths.n_loss * (1 - baths.t_loss)
    return SpectralDensity(antenna.frequency_grid, values, label="n_r_in")


def classical_cooling_spectrum(
    params: ModeParams,
    n_vts: float,
    n_add: float,
    grid: Optional[np.ndarray] = None,
) -> SpectralDensity:
    """Antenna-output change when the blackbody is switched on, cold antenna limit.

    The antenna line dips below the added-noise floor, by t_a·(n_add - n_vts),
    once the added noise is hotter than the blackbody.
    """

    grid = default_grid(params) if grid is None else np.asarray(grid, dtype=float)
    t_a = lorentzian_transmission(params, grid)
    values = n_vts * t_a + n_add * (1 - t_a)
    return SpectralDensity(grid, values, label="delta_n_a_out")


def parasitic_readout_population(params: ModeParams, baths: BathPopulations) -> float:
    return baths.n_para * baths.t_loss * params.response_scale


def white_floor(params: ModeParams, baths: BathPopulations) -> float:
    """Far-detuned radiometer response, where only white baths remain."""

    link = baths.t_loss * params.conversion_efficiency
    return params.response_scale * (
        baths.n_loss * (1 - baths.t_loss)
        + baths.n_vts * baths.t_leak * link
        + (baths.n_ext + baths.n_add) * link
    )
