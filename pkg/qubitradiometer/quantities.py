# Standard library
import math

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.dtos import Measurement
    from qubitradiometer.errors import DomainError
except ImportError:
    import constants
    from dtos import Measurement
    from errors import DomainError

_MAX_EXPONENT = 700.0


def _quantum(frequency: float) -> float:
    """Photon energy h·f expressed in kelvin."""

    if not (math.isfinite(frequency) and frequency > 0):
        raise DomainError(f"frequency must be positive, got {frequency}")

    return constants.PLANCK * frequency / constants.BOLTZMANN


def bose_einstein(frequency: float, temperature: float) -> float:
    """Mean thermal occupation of a mode at `frequency` (Hz) and `temperature` (K)."""

    theta = _quantum(frequency)
    if not (math.isfinite(temperature) and temperature > 0):
        raise DomainError(f"temperature must be positive, got {temperature}")

    x = theta / temperature
    if x > _MAX_EXPONENT:
        return 0.0

    return 1.0 / math.expm1(x)


def temperature_of(frequency: float, population: float) -> float:
    """Inverse of `bose_einstein`: the temperature that yields `population`."""

    theta = _quantum(frequency)
    if not (math.isfinite(population) and population > 0):
        raise DomainError(f"population must be positive, got {population}")

    return theta / math.log1p(1.0 / population)


def temperature_measurement(frequency: float, population: Measurement) -> Measurement:
    """Converts an occupation with uncertainty into a temperature with uncertainty."""

    value = temperature_of(frequency, population.value)
    log_term = math.log1p(1.0 / population.value)
    slope = _quantum(frequency) / (
        log_term**2 * population.value * (population.value + 1)
    )
    return Measurement(value, abs(slope) * population.sigma)


def hz_to_angular(frequency: float) -> float:
    return constants.TWO_PI * frequency


def angular_to_hz(rate: float) -> float:
    return rate / constants.TWO_PI
