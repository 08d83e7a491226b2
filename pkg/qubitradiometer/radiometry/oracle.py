"""Exact dephasing of the cascaded antenna/readout system.

The P-function of the qubit coherence ρ_ge stays Gaussian,
E·exp(-A|α|² - B|β|² - Cα*β - Dαβ*), with α the antenna field and β the
readout field. Rather than the coefficients M = [[A, D], [C, B]] themselves
the integrator follows the covariance Σ = M⁻¹ and ln I with I = ∫P. A vacuum
readout mode then starts from a small Σ_22 = ε instead of a huge B = 1/ε.
"""

# Standard library
import logging
import math
from dataclasses import replace
from typing import Optional

# Third party
import numpy as np
from scipy.integrate import solve_ivp

# Local
try:
    from qubitradiometer.dtos import (
        GaussianAnsatzState,
        ModeParams,
        OracleConfig,
        PulseTiming,
    )
    from qubitradiometer.errors import ConvergenceError, IntegrationError
    from qubitradiometer.radiometry.analytic import invert_gamma_th
except ImportError:
    from dtos import GaussianAnsatzState, ModeParams, OracleConfig, PulseTiming
    from errors import ConvergenceError, IntegrationError
    from radiometry.analytic import invert_gamma_th

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = OracleConfig()


#########
# HELPERS
#########


def _rates(
    params: ModeParams,
    n_vts: float,
    pump_on: bool,
    delta_a: Optional[float],
    config: OracleConfig,
):
    delta = params.delta_a if delta_a is None else delta_a
    coupling = params.coupling if pump_on else 0.0
    kappa_r = params.kappa_r
    if not pump_on and config.isolate_cavity_when_off:
        kappa_r = params.kappa_r_i
    nu = n_vts * params.kappa_a_i
    return delta, coupling, kappa_r, nu


def _initial_covariance(params: ModeParams, n_vts: float, config: OracleConfig):
    sigma = np.diag([params.gamma * n_vts, config.epsilon]).astype(complex)
    return np.array([sigma[0, 0], sigma[0, 1], sigma[1, 0], sigma[1, 1], 0j])


def _to_state(y: np.ndarray, t: float) -> GaussianAnsatzState:
    sigma = np.array([[y[0], y[1]], [y[2], y[3]]])
    return GaussianAnsatzState.from_covariance(sigma, y[4], t)


def _check(y: np.ndarray, t: float) -> GaussianAnsatzState:
    if not np.all(np.isfinite(y)):
        raise IntegrationError(f"non-finite Gaussian coefficients at t={t:.3e} s")

    state = _to_state(y, t)
    if not state.is_finite or abs(state.determinant) == 0:
        raise IntegrationError(f"singular Gaussian at t={t:.3e} s")
    if state.a.real <= 0:
        raise IntegrationError(f"Re(a) <= 0 at t={t:.3e} s")
    if state.b.real <= 0:
        logger.debug("Re(b) <= 0 at t=%.3e s, continuing analytically", t)

    return state


def _segment(y0, t0, t1, params, n_vts, pump_on, delta_a, config):
    result = solve_ivp(
        lambda t, y: covariance_rhs(y, params, n_vts, pump_on, delta_a, config),
        (t0, t1),
        y0,
        method=config.method,
        rtol=config.rtol,
        atol=config.atol,
        max_step=config.max_step,
    )
    if not result.success:
        raise IntegrationError(result.message)

    logger.debug(
        "segment [%.3e, %.3e] pump_on=%s: %d rhs evaluations",
        t0,
        t1,
        pump_on,
        result.nfev,
    )
    return result.y[:, -1]


######
# MAIN
######


def ansatz_rhs(
    state: GaussianAnsatzState,
    params: ModeParams,
    n_vts: float,
    pump_on: bool,
    delta_a: Optional[float] = None,
    config: OracleConfig = DEFAULT_CONFIG,
) -> np.ndarray:
    """Time derivatives of (a, b, c, d, e) from the Fokker-Planck equation."""

    delta, g, kappa_r, nu = _rates(params, n_vts, pump_on, delta_a, config)
    chi, kappa_a = params.chi, params.kappa_a
    a, b, c, d, e = state.a, state.b, state.c, state.d, state.e

    half = (kappa_a + kappa_r + 1j * chi) / 2
    return np.array(
        [
            kappa_a * a - nu * a * a + g * (c + d),
            (kappa_r + 1j * chi) * b - nu * c * d + 1j * chi,
            (half + 1j * delta - nu * a) * c + g * b,
            (half - 1j * delta - nu * a) * d + g * b,
            (kappa_a + kappa_r + 1j * chi - nu * a) * e,
        ],
        dtype=complex,
    )


def covariance_rhs(
    y: np.ndarray,
    params: ModeParams,
    n_vts: float,
    pump_on: bool,
    delta_a: Optional[float] = None,
    config: OracleConfig = DEFAULT_CONFIG,
) -> np.ndarray:
    """Derivative of [Σ11, Σ12, Σ21, Σ22, ln I], equal to -ΣṀΣ for the matrix part."""

    delta, g, kappa_r, nu = _rates(params, n_vts, pump_on, delta_a, config)
    chi, kappa_a = params.chi, params.kappa_a
    s11, s12, s21, s22 = y[0], y[1], y[2], y[3]

    p1 = (kappa_r + 1j * chi) / 2 - 1j * delta
    p2 = (kappa_r + 1j * chi) / 2 + 1j * delta
    return np.array(
        [
            nu - kappa_a * s11 - 1j * chi * s12 * s21,
            -g * s11 - (p2 + kappa_a / 2) * s12 - 1j * chi * s12 * s22,
            -g * s11 - (p1 + kappa_a / 2) * s21 - 1j * chi * s22 * s21,
            -(kappa_r + 1j * chi) * s22 - g * (s12 + s21) - 1j * chi * s22 * s22,
            -1j * chi * s22,
        ],
        dtype=complex,
    )


def _integrate(params, n_vts, timing, config, delta_a):
    if not n_vts > 0:
        raise IntegrationError("the thermal antenna state needs n_vts > 0")

    y = _initial_covariance(params, n_vts, config)
    trajectory = [(0.0, y)]

    y = _segment(y, 0.0, timing.tau_p, params, n_vts, True, delta_a, config)
    trajectory.append((timing.tau_p, y))

    if timing.tau > timing.tau_p:
        y = _segment(
            y, timing.tau_p, timing.tau, params, n_vts, False, delta_a, config
        )
    trajectory.append((timing.tau, y))

    for t, y in trajectory:
        _check(y, t)
    return trajectory


def integrate_ansatz(
    params: ModeParams,
    n_vts: float,
    timing: PulseTiming,
    config: OracleConfig = DEFAULT_CONFIG,
    delta_a: Optional[float] = None,
) -> list[GaussianAnsatzState]:
    """Gaussian states at t = 0, τ_p and τ. The pump switches off at τ_p."""

    trajectory = _integrate(params, n_vts, timing, config, delta_a)
    return [_to_state(y, t) for t, y in trajectory]


def _ratio(params, n_vts, timing, config, delta_a) -> float:
    _, final = _integrate(params, n_vts, timing, config, delta_a)[-1]
    return math.exp(final[4].real)


def dephasing_ratio(
    params: ModeParams,
    n_vts: float,
    timing: PulseTiming,
    config: OracleConfig = DEFAULT_CONFIG,
    delta_a: Optional[float] = None,
) -> float:
    """|I(τ)|/|I(0)|, the Ramsey contrast left after the pumped exposure."""

    if n_vts == 0 or params.chi == 0:
        return 1.0

    ratio = _ratio(params, n_vts, timing, config, delta_a)
    if config.check_convergence:
        finer = replace(config, epsilon=config.epsilon / 10, check_convergence=False)
        refined = _ratio(params, n_vts, timing, finer, delta_a)
        if abs(refined - ratio) > config.convergence_tol:
            raise ConvergenceError(
                f"dephasing ratio moved by {abs(refined - ratio):.2e} "
                f"when epsilon was reduced to {finer.epsilon:.1e}"
            )

    return ratio


def mean_dephasing_rate(ratio: float, timing: PulseTiming) -> float:
    """Γ̄_a implied by a contrast ratio, clipped at zero."""
    return max(-math.log(ratio) / timing.tau_p, 0.0)


def eta_from_ratio(
    params: ModeParams, timing: PulseTiming, ratio: float, n_probe: float
) -> float:
    n_eff = invert_gamma_th(params, mean_dephasing_rate(ratio, timing))
    return n_eff * params.kappa_r**2 / (params.kappa_r_c * params.kappa_a * n_probe)


def eta_a_oracle(
    params: ModeParams,
    timing: PulseTiming,
    delta_a: Optional[float],
    n_probe: float,
    config: OracleConfig = DEFAULT_CONFIG,
) -> float:
    ratio = dephasing_ratio(params, n_probe, timing, config, delta_a)
    if ratio < 0.5:
        logger.warning(
            "n_probe=%g dephases the qubit to %.2f, outside the linear regime",
            n_probe,
            ratio,
        )

    return eta_from_ratio(params, timing, ratio, n_probe)
