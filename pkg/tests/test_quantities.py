# Standard library
import math

# Third party
import pytest

# Local
from qubitradiometer.dtos import Measurement
from qubitradiometer.errors import DomainError
from qubitradiometer.quantities import (
    angular_to_hz,
    bose_einstein,
    hz_to_angular,
    temperature_measurement,
    temperature_of,
)


def test_bose_einstein_blackbody_source():
    assert bose_einstein(10.5e9, 1.03) == pytest.approx(1.59, abs=0.01)


def test_temperature_of_system_noise():
    assert temperature_of(10.5e9, 0.49) == pytest.approx(0.45, abs=0.01)


@pytest.mark.parametrize("temperature", [0.02, 0.3, 1.03, 4.0, 300.0])
def test_temperature_inverts_occupation(temperature):
    n = bose_einstein(7.6e9, temperature)
    assert temperature_of(7.6e9, n) == pytest.approx(temperature, rel=1e-12)


def test_cold_limit_is_zero():
    assert bose_einstein(1e12, 1e-3) == 0.0


def test_hot_limit_is_rayleigh_jeans():
    frequency, temperature = 1e9, 1000.0
    theta = 6.62607015e-34 * frequency / 1.380649e-23
    assert bose_einstein(frequency, temperature) == pytest.approx(
        temperature / theta - 0.5, rel=1e-6
    )


@pytest.mark.parametrize(
    "call",
    [
        lambda: bose_einstein(0.0, 1.0),
        lambda: bose_einstein(-1e9, 1.0),
        lambda: bose_einstein(1e9, 0.0),
        lambda: bose_einstein(1e9, math.nan),
        lambda: temperature_of(1e9, 0.0),
        lambda: temperature_of(1e9, -0.1),
    ],
)
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_domain_error_is_a_value_error():
    with pytest.raises(ValueError):
        temperature_of(0.0, 1.0)


def test_temperature_measurement_matches_finite_difference():
    population = Measurement(0.25, 0.01)
    result = temperature_measurement(10.5e9, population)

    h = 1e-6
    slope = (temperature_of(10.5e9, 0.25 + h) - temperature_of(10.5e9, 0.25 - h)) / (
        2 * h
    )
    assert result.value == pytest.approx(temperature_of(10.5e9, 0.25))
    assert result.sigma == pytest.approx(abs(slope) * 0.01, rel=1e-6)


def test_angular_conversions():
    assert hz_to_angular(1.0) == pytest.approx(2 * math.pi)
    assert angular_to_hz(hz_to_angular(3.1e6)) == pytest.approx(3.1e6)


def test_temperature_of_external_bath():
    assert temperature_of(10.5e9, 0.014) == pytest.approx(0.115, abs=0.01)


def test_bose_einstein_lossy_link():
    assert bose_einstein(10.5e9, 0.2032) == pytest.approx(0.09, abs=0.005)


def test_temperature_of_blackbody_source():
    assert temperature_of(10.5e9, 1.59) == pytest.approx(1.03, abs=0.01)
