# Standard library
import logging
import math
from dataclasses import replace
from typing import Optional, Union

# Third party
import numpy as np

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.dtos import (
        Measurement,
        ModeParams,
        PulseTiming,
        QubitParams,
        RamseyFringe,
        ReadoutModel,
    )
    from qubitradiometer.errors import EstimationError, FitError
    from qubitradiometer.radiometry.analytic import (
        gamma_th_slope,
        invert_gamma_th,
        linear_dephasing_slope,
    )
except ImportError:
    import constants
    from dtos import (
        Measurement,
        ModeParams,
        PulseTiming,
        QubitParams,
        RamseyFringe,
        ReadoutModel,
    )
    from errors import EstimationError, FitError
    from radiometry.analytic import (
        gamma_th_slope,
        invert_gamma_th,
        linear_dephasing_slope,
    )

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.SeedSequence, None]

_MIN_POINTS = 8
_P_CLIP = 1e-4


#########
# HELPERS
#########


def _design(phases: np.ndarray) -> np.ndarray:
    return np.column_stack([np.ones_like(phases), np.cos(phases), np.sin(phases)])


def _amplitude(coef: np.ndarray, cov: np.ndarray) -> tuple[float, float, float]:
    a, b = coef[1], coef[2]
    amplitude = math.hypot(a, b)
    # c0 - A cos(φ - φ0) = c0 - A cos φ0 cos φ - A sin φ0 sin φ
    phase_offset = math.atan2(-b, -a) % (2 * math.pi) if amplitude > 0 else 0.0
    block = cov[1:, 1:]
    if amplitude > 0:
        grad = np.array([a, b]) / amplitude
        amp_sigma = math.sqrt(max(grad @ block @ grad, 0.0))
    else:
        amp_sigma = math.sqrt(max(np.trace(block) / 2, 0.0))
    return amplitude, phase_offset, amp_sigma


######
# MAIN
######


def default_phases(
    points: int = constants.DEFAULT_PHASE_POINTS,
    periods: int = constants.DEFAULT_PHASE_PERIODS,
) -> np.ndarray:
    return np.linspace(0.0, 2 * math.pi * periods, points, endpoint=False)


def amp_off(qubit: QubitParams, timing: PulseTiming) -> float:
    return 0.5 * math.exp(-qubit.gamma_2r * timing.tau)


def amp_ratio(gamma_a_mean: float, qubit: QubitParams, timing: PulseTiming) -> float:
    """A_off/A_on. The pumped window swaps intrinsic dephasing for conversion."""
    return math.exp((gamma_a_mean - qubit.gamma_2r) * timing.tau_p)


def synth_fringe(
    amplitude: float,
    phase_offset: float,
    readout: ReadoutModel,
    timing: PulseTiming,
    seed: Seed = None,
    phases: Optional[np.ndarray] = None,
) -> RamseyFringe:
    """Simulates a Ramsey fringe of coherence `amplitude` with binomial shot noise.

    The qubit starts in e with probability p_e_ini, the coherence shrinks to
    `amplitude`, and the readout confusion matrix is applied last. The
    returned fringe already carries its fitted amplitude.
    """

    if not 0 <= amplitude <= 0.5:
        raise FitError(f"fringe amplitude must lie in [0, 0.5], got {amplitude}")

    phases = default_phases() if phases is None else np.asarray(phases, dtype=float)
    p_g_true = 0.5 - (1 - 2 * readout.p_e_ini) * amplitude * np.cos(
        phases - phase_offset
    )
    p_click = readout.read_g(p_g_true)

    rng = np.random.default_rng(seed)
    g_counts = rng.binomial(timing.n_rep, p_click)
    counts = np.column_stack([g_counts, timing.n_rep - g_counts])

    fringe = RamseyFringe(phases, p_click, n_rep=timing.n_rep, counts=counts)
    amplitude, phase_offset, amp_sigma = fit_fringe(fringe)
    return replace(
        fringe, amplitude=amplitude, phase_offset=phase_offset, amp_sigma=amp_sigma
    )


def fit_fringe(fringe: RamseyFringe) -> tuple[float, float, float]:
    """Fits c0 - A·cos(φ - φ0) and returns (A, φ0, σ_A).

    Sampled fringes are weighted by their binomial variance; exact fringes
    are fitted unweighted and take their scale from the residuals.
    """

    phases = fringe.phases
    if phases.size < _MIN_POINTS:
        raise FitError(f"need at least {_MIN_POINTS} phases, got {phases.size}")
    if np.ptp(phases) < 2 * math.pi * (1 - 1 / phases.size):
        raise FitError("phase grid must span a full period")

    x = _design(phases)
    if np.linalg.matrix_rank(x) < 3:
        raise FitError("degenerate phase grid")

    y = fringe.observed
    coef, *_ = np.linalg.lstsq(x, y, rcond=None)

    if fringe.counts is None:
        residuals = y - x @ coef
        dof = phases.size - 3
        scale = float(residuals @ residuals) / dof
        cov = scale * np.linalg.inv(x.T @ x)
        return _amplitude(coef, cov)

    model = np.clip(x @ coef, _P_CLIP, 1 - _P_CLIP)
    weights = fringe.n_rep / (model * (1 - model))
    xw = x * np.sqrt(weights)[:, None]
    coef, *_ = np.linalg.lstsq(xw, y * np.sqrt(weights), rcond=None)
    cov = np.linalg.inv(xw.T @ xw)
    return _amplitude(coef, cov)


def fringe_pair(
    gamma_a_mean: float,
    qubit: QubitParams,
    timing: PulseTiming,
    readout: Optional[ReadoutModel] = None,
    seed: Seed = None,
    phase_shift: float = 0.0,
) -> tuple[RamseyFringe, RamseyFringe]:
    """Pump-on and pump-off fringes for a given Γ̄_a, from one seed stream.

    `phase_shift` is the ac-Stark phase picked up by the pumped fringe.
    """

    readout = ReadoutModel.from_qubit(qubit) if readout is None else readout
    on_seed, off_seed = np.random.SeedSequence(seed).spawn(2)
    off = amp_off(qubit, timing)
    on = off / amp_ratio(gamma_a_mean, qubit, timing)
    return (
        synth_fringe(min(on, 0.5), phase_shift, readout, timing, on_seed),
        synth_fringe(off, 0.0, readout, timing, off_seed),
    )


def estimate_gamma_a(
    fringe_on: RamseyFringe,
    fringe_off: RamseyFringe,
    qubit: QubitParams,
    timing: PulseTiming,
    gamma_2r_sigma: float = 0.0,
) -> Measurement:
    a_on, sigma_on = _fitted(fringe_on)
    a_off, sigma_off = _fitted(fringe_off)
    if a_on <= 0:
        raise EstimationError("pump-on fringe has no contrast left")
    if a_off <= 0:
        raise EstimationError("pump-off fringe has no contrast left")

    gamma = math.log(a_off / a_on) / timing.tau_p + qubit.gamma_2r
    variance = ((sigma_on / a_on) ** 2 + (sigma_off / a_off) ** 2) / timing.tau_p**2
    return Measurement(gamma, math.sqrt(variance + gamma_2r_sigma**2))


def _fitted(fringe: RamseyFringe) -> tuple[float, float]:
    if fringe.amplitude is None:
        amplitude, _, amp_sigma = fit_fringe(fringe)
        return amplitude, amp_sigma

    return fringe.amplitude, fringe.amp_sigma or 0.0


def estimate_n_r_eff(
    fringe_on: RamseyFringe,
    fringe_off: RamseyFringe,
    qubit: QubitParams,
    timing: PulseTiming,
    params: ModeParams,
    gamma_2r_sigma: float = 0.0,
) -> Measurement:
    """Effective readout population behind a pump-on/pump-off fringe pair."""

    gamma, gamma_sigma = estimate_gamma_a(
        fringe_on, fringe_off, qubit, timing, gamma_2r_sigma
    )
    if gamma < 0:
        # Shot noise on a weak signal
        logger.warning("negative dephasing rate %.3g, using the linear inverse", gamma)
        slope = linear_dephasing_slope(params)
        n_r_eff = gamma / slope
    else:
        n_r_eff = invert_gamma_th(params, gamma)
        slope = gamma_th_slope(params, n_r_eff)

    return Measurement(n_r_eff, gamma_sigma / slope)
