# Standard library
import cmath
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

# Third party
import numpy as np
from scipy import integrate, optimize

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.dtos import (
        BathPopulations,
        DephasingSpectrum,
        ModeParams,
        PulseTiming,
    )
    from qubitradiometer.errors import DomainError
except ImportError:
    import constants
    from dtos import BathPopulations, DephasingSpectrum, ModeParams, PulseTiming
    from errors import DomainError

logger = logging.getLogger(__name__)


#########
# HELPERS
#########


@dataclass(frozen=True)
class CorrelatorKernel:
    """Rates entering the pulsed Lorentzian correlators, all in rad/s."""

    kappa_a: float
    kappa_r: float
    chi: float
    kappa_r_c: float
    gamma: float
    delta_a: float = 0.0

    @classmethod
    def from_params(
        cls, params: ModeParams, delta_a: Optional[float] = None
    ) -> "CorrelatorKernel":
        return cls(
            kappa_a=params.kappa_a,
            kappa_r=params.kappa_r,
            chi=params.chi,
            kappa_r_c=params.kappa_r_c,
            gamma=params.gamma,
            delta_a=params.delta_a if delta_a is None else delta_a,
        )

    @property
    def prefactor(self) -> float:
        return self.kappa_a * self.kappa_r_c * self.gamma * (1 - self.gamma)


def _relaxed(d: complex, t: float) -> complex:
    """(1 - e^{-d t})/d, finite as d → 0."""

    x = d * t
    if abs(x) < constants.CORRELATOR_SERIES_THRESHOLD:
        return t * (1 - x / 2 + x * x / 6)

    return -np.expm1(-x) / d


def _crossed(kappa: complex, a: complex, t: float) -> complex:
    """(e^{-κt} - e^{-at})/(a - κ), bounded for Re κ, Re a > 0."""

    d = a - kappa
    if d.real >= 0:
        return cmath.exp(-kappa * t) * _relaxed(d, t)

    return cmath.exp(-a * t) * _relaxed(-d, t)


def _one_sided(kappa_a: float, kappa: complex, delta: float, t: float) -> complex:
    # ∫0^t ds e^{-κ(t-s)} ∫0^s ds' e^{-(iΔ + κ_a/2)(s-s')}, one half of the
    # symmetric bath kernel.
    a = 1j * delta + (kappa + kappa_a) / 2
    return (_relaxed(a, t) - _crossed(kappa, a, t)) / kappa


######
# MAIN
######


def gamma_th(params: ModeParams, n_r_th: float) -> float:
    """Measurement-induced dephasing rate of a white thermal population `n_r_th`."""

    if n_r_th < 0:
        raise DomainError(f"population must be >= 0, got {n_r_th}")

    x = params.chi / params.kappa_r
    w = 1 + 1j * x
    z = w * w + 4j * x * n_r_th
    # Re√z - 1 rewritten as Re[(z - w²)/(√z + w)] to keep small n exact
    return params.kappa_r / 2 * (4j * x * n_r_th / (cmath.sqrt(z) + w)).real


def gamma_th_slope(params: ModeParams, n_r_th: float) -> float:
    if n_r_th < 0:
        raise DomainError(f"population must be >= 0, got {n_r_th}")

    x = params.chi / params.kappa_r
    z = (1 + 1j * x) ** 2 + 4j * x * n_r_th
    return params.kappa_r * (1j * x / cmath.sqrt(z)).real


def linear_dephasing_slope(params: ModeParams) -> float:
    chi, kappa_r = params.chi, params.kappa_r
    return chi**2 * kappa_r / (chi**2 + kappa_r**2)


def invert_gamma_th(params: ModeParams, gamma: float) -> float:
    """White thermal population of the readout mode that dephases at `gamma`."""

    if gamma < 0:
        raise DomainError(f"dephasing rate must be >= 0, got {gamma}")
    if gamma == 0:
        return 0.0

    slope = linear_dephasing_slope(params)
    if slope == 0:
        raise DomainError("no population dephases the qubit when chi = 0")

    n_lo = gamma / slope
    if gamma / params.kappa_r < constants.LINEAR_INVERSE_THRESHOLD:
        return n_lo

    # Γ_th is concave and starts with `slope`, so n_lo never overshoots
    f = lambda n: gamma_th(params, n) - gamma
    if f(n_lo) >= 0:
        return n_lo

    n_hi = 2 * n_lo
    while f(n_hi) < 0:
        n_hi *= 2
    logger.debug("invert_gamma_th bracket [%g, %g]", n_lo, n_hi)

    return optimize.brentq(f, n_lo, n_hi, xtol=n_lo * 1e-15, rtol=1e-13)


def correlator_n(
    kernel: CorrelatorKernel, t: float, kappa: complex, delta: float, n_vts: float
) -> complex:
    """Pulsed-Lorentzian correlator N(t, κ, Δ) of the cascaded readout field."""

    if t < 0:
        raise DomainError("t must be >= 0")

    total = _one_sided(kernel.kappa_a, kappa, delta, t) + _one_sided(
        kernel.kappa_a, kappa, -delta, t
    )
    return n_vts * kernel.prefactor * total


def _pumped_correlators(kernel: CorrelatorKernel, t: float, delta_a: float):
    half_chi = kernel.chi / 2
    gg = correlator_n(kernel, t, kernel.kappa_r, delta_a - half_chi, 1.0)
    ee = correlator_n(kernel, t, kernel.kappa_r, delta_a + half_chi, 1.0)
    ge = correlator_n(kernel, t, kernel.kappa_r - 1j * kernel.chi, delta_a, 1.0)
    eg = correlator_n(kernel, t, kernel.kappa_r + 1j * kernel.chi, delta_a, 1.0)
    return gg, ee, ge, eg


def dephasing_integrand(
    kernel: CorrelatorKernel,
    t: float,
    n_vts: float,
    timing: PulseTiming,
    delta_a: Optional[float] = None,
) -> float:
    """⟨D†D⟩(t) over the whole Ramsey wait, with ring-down after the pump."""

    delta_a = kernel.delta_a if delta_a is None else delta_a
    if t <= timing.tau_p:
        gg, ee, ge, eg = _pumped_correlators(kernel, t, delta_a)
        return n_vts * (gg + ee - ge - eg).real

    gg, ee, ge, eg = _pumped_correlators(kernel, timing.tau_p, delta_a)
    elapsed = t - timing.tau_p
    decay = cmath.exp(-kernel.kappa_r * elapsed)
    value = (gg + ee) * decay
    value -= ge * cmath.exp(-(kernel.kappa_r - 1j * kernel.chi) * elapsed)
    value -= eg * cmath.exp(-(kernel.kappa_r + 1j * kernel.chi) * elapsed)
    return n_vts * value.real


def _dephasing_integral(kernel: CorrelatorKernel, timing: PulseTiming) -> float:
    """∫0^τ ⟨D†D⟩ dt / τ_p for unit n_vts."""

    tau_p = timing.tau_p
    pumped, abserr = integrate.quad(
        lambda u: dephasing_integrand(kernel, u * tau_p, 1.0, timing),
        0.0,
        1.0,
        epsabs=1e-12,
        epsrel=1e-10,
        limit=200,
    )
    logger.debug("quad estimated error %.2e", abserr)

    gg, ee, ge, eg = _pumped_correlators(kernel, tau_p, kernel.delta_a)
    tail = (gg + ee) * _relaxed(kernel.kappa_r, timing.tau_w)
    tail -= ge * _relaxed(kernel.kappa_r - 1j * kernel.chi, timing.tau_w)
    tail -= eg * _relaxed(kernel.kappa_r + 1j * kernel.chi, timing.tau_w)
    return pumped + tail.real / tau_p


def mean_dephasing_transmitted(
    params: ModeParams,
    n_vts: float,
    timing: PulseTiming,
    delta_a: Optional[float] = None,
) -> float:
    """Pump-averaged dephasing rate Γ̄_a caused by transmitted blackbody photons."""

    if n_vts < 0:
        raise DomainError("n_vts must be >= 0")
    if n_vts == 0:
        return 0.0

    kernel = CorrelatorKernel.from_params(params, delta_a)
    return params.kappa_r / 2 * _dephasing_integral(kernel, timing) * n_vts


@lru_cache(maxsize=4096)
def _eta_a(params: ModeParams, timing: PulseTiming, delta_a: float) -> float:
    n_probe = constants.ETA_PROBE_POPULATION
    rate = mean_dephasing_transmitted(params, n_probe, timing, delta_a)
    n_eff = invert_gamma_th(params, max(rate, 0.0))
    return n_eff * params.kappa_r**2 / (params.kappa_r_c * params.kappa_a * n_probe)


def eta_a(
    params: ModeParams, timing: PulseTiming, delta_a: Optional[float] = None
) -> float:
    """Detector response: fraction of the blackbody that reaches the readout mode."""

    delta_a = params.delta_a if delta_a is None else float(delta_a)
    return _eta_a(params, timing, delta_a)


def radiometer_response(
    params: ModeParams,
    baths: BathPopulations,
    timing: PulseTiming,
    delta_a: Optional[float] = None,
) -> float:
    """Effective readout population n̄_r^eff measured at antenna detuning `delta_a`."""

    eta = eta_a(params, timing, delta_a)
    link = baths.t_loss * params.conversion_efficiency
    return params.response_scale * (
        baths.n_vts * link * eta
        + (baths.n_ext + baths.n_add) * link * (1 - eta)
        + baths.n_loss * (1 - baths.t_loss)
        + baths.n_vts * baths.t_leak * link
    )


def reflected_response(
    params: ModeParams,
    n_reflected: float,
    timing: PulseTiming,
    delta_a: Optional[float] = None,
) -> float:
    """Readout population due to a reflected white bath alone, which the
    antenna notches out where it transmits the blackbody."""

    return params.response_scale * n_reflected * (1 - eta_a(params, timing, delta_a))


def dephasing_spectrum(
    params: ModeParams,
    baths: BathPopulations,
    timing: PulseTiming,
    detunings: Sequence[float],
    sigma: Optional[Sequence[float]] = None,
) -> DephasingSpectrum:
    detunings = np.asarray(detunings, dtype=float)
    n_r_eff = [radiometer_response(params, baths, timing, d) for d in detunings]
    return DephasingSpectrum(detunings, n_r_eff, sigma=sigma, tau_p=timing.tau_p)
