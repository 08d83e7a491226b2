# Third party
import numpy as np
import pytest

# Local
from qubitradiometer.dtos import BathPopulations, SpectralDensity
from qubitradiometer.errors import ValidationError
from qubitradiometer.radiometry.antenna import (
    antenna_output_spectrum,
    antenna_population,
    classical_cooling_spectrum,
    default_grid,
    lorentzian_transmission,
    parasitic_readout_population,
    readout_input_spectrum,
    white_floor,
)


def test_transmission_peak(params):
    gamma = params.gamma
    assert lorentzian_transmission(params, 0.0) == pytest.approx(
        4 * gamma * (1 - gamma)
    )


def test_transmission_half_width(params):
    half = params.kappa_a / (4 * np.pi)
    peak = lorentzian_transmission(params, 0.0)
    assert lorentzian_transmission(params, half) == pytest.approx(peak / 2)
    assert lorentzian_transmission(params, -half) == pytest.approx(peak / 2)


def test_transmission_accepts_arrays(params):
    values = lorentzian_transmission(params, np.array([-1e6, 0.0, 1e6]))
    assert values.shape == (3,)
    assert values[1] > values[0]
    assert values[0] == pytest.approx(values[2])


def test_antenna_population(params, baths):
    expected = params.gamma * baths.n_vts + (1 - params.gamma) * baths.n_ext
    assert antenna_population(params, baths) == pytest.approx(expected)
    assert expected == pytest.approx(0.49, abs=0.02)


def test_antenna_population_includes_added_noise(params):
    baths = BathPopulations(n_vts=0, n_ext=0, n_add=1.0)
    assert antenna_population(params, baths) == pytest.approx(1 - params.gamma)

    both = BathPopulations(n_vts=0, n_ext=0.4, n_add=0.6)
    assert antenna_population(params, both) == pytest.approx(1 - params.gamma)


def test_default_grid_spans_ten_linewidths(params):
    grid = default_grid(params)
    assert grid.size == 401
    assert grid[-1] == pytest.approx(10 * params.kappa_a / (2 * np.pi))
    assert grid[0] == pytest.approx(-grid[-1])


def test_output_spectrum_far_tail_is_white(params, baths):
    spectrum = antenna_output_spectrum(params, baths, np.array([-1e9, 0.0, 1e9]))
    floor = baths.n_vts * baths.t_leak + baths.n_ext + baths.n_add
    assert isinstance(spectrum, SpectralDensity)
    assert spectrum.values[0] == pytest.approx(floor, rel=1e-6)
    assert spectrum.peak()[0] == 0.0


def test_readout_input_applies_the_link(params, baths):
    grid = default_grid(params, points=11)
    antenna = antenna_output_spectrum(params, baths, grid)
    readout = readout_input_spectrum(params, baths, grid)
    expected = antenna.values * baths.t_loss + baths.n_loss * (1 - baths.t_loss)
    np.testing.assert_allclose(readout.values, expected)


def test_all_zero_baths_give_an_empty_spectrum(params):
    baths = BathPopulations(n_vts=0, n_ext=0, n_add=0, n_loss=0, t_leak=0)
    assert np.all(readout_input_spectrum(params, baths).values == 0)


@pytest.mark.parametrize("n_add, dip", [(0.5, False), (3.0, True)])
def test_cooling_dip_appears_when_added_noise_exceeds_blackbody(params, n_add, dip):
    spectrum = classical_cooling_spectrum(params, n_vts=1.59, n_add=n_add)
    centre = spectrum.values[spectrum.values.size // 2]
    edge = spectrum.values[0]
    assert (centre < edge) == dip


def test_parasitic_readout_population(params):
    baths = BathPopulations(t_loss=0.52)
    assert baths.n_para == pytest.approx(0.156, abs=1e-3)
    assert parasitic_readout_population(params, baths) == pytest.approx(
        0.0363, abs=5e-4
    )


def test_white_floor_without_baths(params):
    baths = BathPopulations(n_vts=0, n_ext=0, n_loss=0, t_leak=0)
    assert white_floor(params, baths) == 0.0


def test_spectral_density_rejects_unsorted_grid():
    with pytest.raises(ValidationError):
        SpectralDensity(np.array([1.0, 0.0]), np.array([0.0, 0.0]))


def test_output_spectrum_is_flat_when_baths_balance(params):
    baths = BathPopulations(n_vts=1.0, n_ext=0.4, n_add=0.6, t_leak=0)
    spectrum = antenna_output_spectrum(params, baths, np.array([-1e8, 0.0, 1e8]))
    np.testing.assert_allclose(spectrum.values, 1.0, rtol=1e-12)


def test_output_spectrum_on_resonance_is_pure_transmission(params):
    baths = BathPopulations(n_vts=1.59, n_ext=0, n_add=0, t_leak=0)
    spectrum = antenna_output_spectrum(params, baths, np.array([-1e6, 0.0, 1e6]))
    gamma = params.gamma
    assert spectrum.values[1] == pytest.approx(1.59 * 4 * gamma * (1 - gamma))


def test_output_spectrum_stays_between_the_baths(params):
    baths = BathPopulations(n_vts=1.59, n_ext=0.014, n_add=0.3, t_leak=0)
    values = antenna_output_spectrum(params, baths).values
    assert values.min() >= 0.314 - 1e-12
    assert values.max() <= 1.59 + 1e-12


def test_output_spectrum_grows_with_every_bath(params):
    grid = default_grid(params, points=21)
    base = BathPopulations(n_vts=1.0, n_ext=0.1, n_add=0.2)
    reference = antenna_output_spectrum(params, base, grid).values
    for name in ("n_vts", "n_ext", "n_add", "t_leak"):
        hotter = base.with_(**{name: getattr(base, name) + 0.1})
        assert np.all(antenna_output_spectrum(params, hotter, grid).values >= reference)


def test_readout_input_is_linear_in_added_noise(params):
    grid = np.array([0.0, 1e9])
    low = readout_input_spectrum(params, BathPopulations(t_loss=0.57, n_add=0.5), grid)
    high = readout_input_spectrum(params, BathPopulations(t_loss=0.57, n_add=1.5), grid)
    assert (high.values[1] - low.values[1]) == pytest.approx(0.57, rel=1e-6)
