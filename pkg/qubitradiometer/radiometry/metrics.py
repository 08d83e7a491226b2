# Standard library
import math
from typing import Optional

# Local
try:
    from qubitradiometer.dtos import (
        DetectorFigures,
        ModeParams,
        PrecisionInputs,
        PulseTiming,
        QubitParams,
    )
    from qubitradiometer.errors import DomainError
    from qubitradiometer.radiometry.analytic import gamma_th
except ImportError:
    from dtos import (
        DetectorFigures,
        ModeParams,
        PrecisionInputs,
        PulseTiming,
        QubitParams,
    )
    from errors import DomainError
    from radiometry.analytic import gamma_th


#########
# HELPERS
#########


def _filter(params: ModeParams) -> float:
    chi2 = params.chi**2
    return chi2 / (chi2 + params.kappa_r**2)


def _contrast(
    qubit: QubitParams,
    params: ModeParams,
    timing: PulseTiming,
    a0: float,
    n_r_th: float,
) -> float:
    exponent = qubit.gamma_2r * timing.tau_w + gamma_th(params, n_r_th) * timing.tau_p
    return a0 * math.exp(-exponent)


def _pick(figures: DetectorFigures, primed: bool) -> tuple[float, float]:
    if primed:
        return figures.eta_prime, figures.p_dc_prime

    return figures.eta, figures.p_dc


######
# MAIN
######


def n_click(p_click: float) -> float:
    """Mean photon clicks behind a click probability, ln(1/(1 - p))."""

    if not 0 <= p_click < 1:
        raise DomainError(f"click probability must lie in [0, 1), got {p_click}")

    return -math.log1p(-p_click)


def click_probability(
    qubit: QubitParams,
    params: ModeParams,
    timing: PulseTiming,
    a0: float,
    n_r_th: float,
) -> float:
    """Probability that the Ramsey detector reports e for a thermal input."""

    return 0.5 - 0.5 * _contrast(qubit, params, timing, a0, n_r_th)


def dynamic_range(qubit: QubitParams, params: ModeParams) -> float:
    """Ratio in dB between the largest and smallest measurable n̄_r^eff."""

    if params.chi == 0:
        raise DomainError("dynamic range is undefined for chi = 0")

    lower = qubit.delta_gamma_2r / params.kappa_r
    upper = 2 * math.pi * (qubit.f_ge - qubit.f_ef) / params.chi
    return 10 * math.log10(upper / lower)


def detector_figures(
    qubit: QubitParams,
    params: ModeParams,
    timing: PulseTiming,
    a0: float,
    n_r_para: float = 0.0,
) -> DetectorFigures:
    """Quantum efficiency and dark counts of the Ramsey sequence used as a
    photon counter, without and with the parasitic background `n_r_para`."""

    if n_r_para < 0:
        raise DomainError("n_r_para must be >= 0")
    if not 0 < a0 <= 1:
        raise DomainError(f"initial contrast must lie in (0, 1], got {a0}")

    filt = _filter(params)
    bare = _contrast(qubit, params, timing, a0, 0.0)
    loaded = _contrast(qubit, params, timing, a0, n_r_para)
    return DetectorFigures(
        eta=bare / (1 + bare) * filt,
        p_dc=math.log(2 / (1 + bare)),
        eta_prime=loaded / (1 + loaded) * filt,
        p_dc_prime=math.log(2 / (1 + loaded)),
        dynamic_range_db=dynamic_range(qubit, params) if params.chi else math.nan,
        tau_p=timing.tau_p,
        n_r_para=n_r_para,
    )


def precision_linear(inputs: PrecisionInputs) -> float:
    """Relative precision δn/n_sys of a total-power radiometer."""

    return math.sqrt(
        2 * math.pi / (inputs.bandwidth * inputs.t_int) + inputs.delta_g_over_g**2
    )


def precision_dephasing(
    figures: DetectorFigures,
    params: ModeParams,
    timing: PulseTiming,
    n_shots: int,
    primed: bool = False,
) -> float:
    if n_shots < 1:
        raise DomainError("need at least one shot")

    eta, p_dc = _pick(figures, primed)
    return math.sqrt(p_dc * (1 - p_dc) / n_shots) / (
        eta * params.kappa_r * timing.tau_p
    )


def outperform_ratio(
    figures: DetectorFigures,
    params: ModeParams,
    timing: PulseTiming,
    n_sys_lin: float,
    primed: bool = False,
) -> float:
    """δn_lin/δn_qu at equal integration time against an amplifier of bandwidth κ_r."""

    eta, p_dc = _pick(figures, primed)
    variance = p_dc * (1 - p_dc)
    if variance == 0:
        return math.inf

    kappa_tau = params.kappa_r * timing.tau_p
    return n_sys_lin * eta * math.sqrt(2 * math.pi * kappa_tau / variance)


def equivalent_bandwidth(
    figures: DetectorFigures,
    params: ModeParams,
    timing: PulseTiming,
    n_sys_lin: float,
    primed: bool = False,
) -> float:
    """Amplifier bandwidth (rad/s) that would match the dephasing precision."""

    eta, p_dc = _pick(figures, primed)
    variance = p_dc * (1 - p_dc)
    if variance == 0:
        return math.inf

    return (
        2 * math.pi * n_sys_lin**2 * eta**2 * params.kappa_r**2 * timing.tau_p
    ) / variance


def n_shots_for(
    tau_int: float, timing: PulseTiming, dead_time: Optional[float] = 0.0
) -> int:
    """Shots that fit in `tau_int` when each costs τ_p plus `dead_time`."""

    period = timing.tau_p + (dead_time or 0.0)
    shots = int(math.floor(tau_int / period))
    if shots < 1:
        raise DomainError("integration time is shorter than one shot")

    return shots
