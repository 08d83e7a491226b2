"""Three-step extraction of the link losses and bath populations.

Step A sweeps an added white-noise source and turns the slope of n̄_r^eff
against n_add into the transmission efficiency η_a(Δ_a). Step B sweeps the
blackbody and splits the slope of n̄_r^eff against n_vts into the η_a-shaped
part (t_loss) and the white leakage (t_leak). Step C reads n_ext and n_loss
off the intercepts of the same lines.
"""

# Standard library
import logging
import math
from collections import defaultdict
from typing import Callable, Iterable, Optional, Sequence

# Third party
import numpy as np

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.dtos import (
        BathPopulations,
        CalibrationResult,
        EtaProfile,
        FitLine,
        Measurement,
        ModeParams,
        PulseTiming,
        QubitParams,
        ReadoutModel,
        SweepRecord,
    )
    from qubitradiometer.dtos.CalibrationResult import ESTIMATES
    from qubitradiometer.errors import FitError, ProtocolError
    from qubitradiometer.quantities import temperature_measurement
    from qubitradiometer.radiometry.analytic import radiometer_response
except ImportError:
    import constants
    from dtos import (
        BathPopulations,
        CalibrationResult,
        EtaProfile,
        FitLine,
        Measurement,
        ModeParams,
        PulseTiming,
        QubitParams,
        ReadoutModel,
        SweepRecord,
    )
    from dtos.CalibrationResult import ESTIMATES
    from errors import FitError, ProtocolError
    from quantities import temperature_measurement
    from radiometry.analytic import radiometer_response

logger = logging.getLogger(__name__)


#########
# HELPERS
#########


def _group(records: Iterable[SweepRecord], control: str) -> dict[float, list]:
    groups = defaultdict(list)
    for record in records:
        if record.control_name != control:
            continue
        groups[record.delta_a].append(record)
    if not groups:
        raise ProtocolError(f"no records sweep {control}")

    return dict(sorted(groups.items()))


def fit_sweep_lines(
    records: Iterable[SweepRecord], control: str
) -> tuple[np.ndarray, list[FitLine]]:
    """One n̄_r^eff-versus-control line per detuning, ordered by detuning."""

    detunings, lines = [], []
    for delta_a, group in _group(records, control).items():
        if len({r.control_value for r in group}) < 3:
            raise ProtocolError(
                f"detuning {delta_a:.4g} rad/s needs at least 3 {control} values"
            )
        points = [(r.control_value, r.n_r_eff, r.sigma) for r in group]
        detunings.append(delta_a)
        lines.append(fit_line_weighted(points))

    return np.array(detunings), lines


def _far_mask(detunings: np.ndarray, far_detuning: Optional[float]) -> np.ndarray:
    magnitude = np.abs(detunings)
    if far_detuning is None:
        far_detuning = magnitude.max()
    mask = magnitude >= far_detuning * (1 - 1e-9)
    if not mask.any():
        raise ProtocolError(
            f"no far-detuned reference beyond {far_detuning:.4g} rad/s"
        )

    return mask


def _weighted_mean(values: np.ndarray, weights: np.ndarray) -> float:
    return float(weights @ values / weights.sum())


def _inverse_variance(variance: np.ndarray) -> np.ndarray:
    variance = np.asarray(variance, dtype=float)
    floor = np.max(variance) * 1e-12 if np.any(variance > 0) else 1.0
    return 1 / np.maximum(variance, floor)


def _propagate(
    fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray, cov: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """First-order delta method with a central-difference Jacobian."""

    x = np.asarray(x, dtype=float)
    y = np.asarray(fn(x), dtype=float)
    jacobian = np.zeros((y.size, x.size))
    sigma = np.sqrt(np.clip(np.diag(cov), 0, None))
    for j in range(x.size):
        h = 1e-3 * sigma[j] if sigma[j] > 0 else 1e-8 * max(abs(x[j]), 1.0)
        step = np.zeros_like(x)
        step[j] = h
        jacobian[:, j] = (
            np.asarray(fn(x + step)) - np.asarray(fn(x - step))
        ) / (2 * h)

    return y, jacobian @ cov @ jacobian.T


def _block_diag(*blocks: np.ndarray) -> np.ndarray:
    blocks = [np.atleast_2d(b) for b in blocks]
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size))
    i = 0
    for b in blocks:
        n = b.shape[0]
        out[i : i + n, i : i + n] = b
        i += n
    return out


class _Protocol:
    """Steps A to C as plain functions of the fitted slopes and intercepts.

    The averaging weights are fixed once by `freeze`, after which every step
    is a smooth function of the data.
    """

    def __init__(
        self,
        params: ModeParams,
        far: np.ndarray,
        eta_floor: float,
        lam_var: np.ndarray,
        mu_var: np.ndarray,
        slope_var: Optional[np.ndarray] = None,
    ):
        self.k = params.response_scale
        self.far = far
        self.eta_floor = eta_floor
        if slope_var is not None:
            self.w_slope = _inverse_variance(slope_var[far])
        self.w_lam = _inverse_variance(lam_var[far])
        self.w_mu = _inverse_variance(mu_var[far])
        self.lam_var = lam_var
        self.mu_var = mu_var
        self.use = None
        self.u_loss = None
        self.u_ext = None

    def eta(self, slopes: np.ndarray) -> np.ndarray:
        reference = _weighted_mean(slopes[self.far], self.w_slope)
        return 1 - slopes / reference

    def freeze(self, eta: np.ndarray, eta_var: np.ndarray, lam, mu):
        """Chooses the points and weights used by Steps B and C."""

        self.use = (eta >= self.eta_floor) & ~self.far
        if not self.use.any():
            raise ProtocolError(
                f"t_loss is unidentifiable: no detuning has eta_a >= {self.eta_floor}"
            )

        e = eta[self.use]
        lam_far = _weighted_mean(lam[self.far], self.w_lam)
        lam_far_var = 1 / self.w_lam.sum()
        t_i = (lam[self.use] - lam_far) / (self.k * e)
        t_var = (self.lam_var[self.use] + lam_far_var) / (self.k * e) ** 2
        t_var += np.mean(t_i) ** 2 * eta_var[self.use] / e**2
        self.u_loss = _inverse_variance(t_var)

        t_loss = _weighted_mean(t_i, self.u_loss)
        mu_far = _weighted_mean(mu[self.far], self.w_mu)
        mu_far_var = 1 / self.w_mu.sum()
        n_i = (mu_far - mu[self.use]) / (self.k * t_loss * e)
        n_var = (self.mu_var[self.use] + mu_far_var) / (self.k * t_loss * e) ** 2
        n_var += np.mean(n_i) ** 2 * eta_var[self.use] / e**2
        self.u_ext = _inverse_variance(n_var)

    def losses(self, lam: np.ndarray, eta: np.ndarray) -> tuple[float, float]:
        lam_far = _weighted_mean(lam[self.far], self.w_lam)
        t_i = (lam[self.use] - lam_far) / (self.k * eta[self.use])
        t_loss = _weighted_mean(t_i, self.u_loss)
        return t_loss, lam_far / (self.k * t_loss)

    def baths(
        self, mu: np.ndarray, eta: np.ndarray, t_loss: float
    ) -> tuple[float, float]:
        mu_far = _weighted_mean(mu[self.far], self.w_mu)
        n_i = (mu_far - mu[self.use]) / (self.k * t_loss * eta[self.use])
        n_ext = _weighted_mean(n_i, self.u_ext)
        if t_loss >= 1:
            return n_ext, math.nan

        return n_ext, (mu_far / self.k - n_ext * t_loss) / (1 - t_loss)


def _slopes(lines: Sequence[FitLine]) -> tuple[np.ndarray, np.ndarray]:
    return (
        np.array([line.slope for line in lines]),
        np.array([line.covariance[1, 1] for line in lines]),
    )


def _intercepts(lines: Sequence[FitLine]) -> tuple[np.ndarray, np.ndarray]:
    return (
        np.array([line.intercept for line in lines]),
        np.array([line.covariance[0, 0] for line in lines]),
    )


######
# MAIN
######


def fit_line_weighted(points: Iterable[tuple]) -> FitLine:
    """Straight-line fit y = a + b·x minimizing Σ((y - a - b·x)/σ)².

    Points are (x, y, sigma) triples. When any sigma is missing the fit is
    unweighted and the covariance is scaled by the residual variance.
    """

    points = list(points)
    if len(points) < 3:
        raise FitError(f"need at least 3 points, got {len(points)}")

    x = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    sigma = np.array(
        [math.nan if p[2] is None else p[2] for p in points], dtype=float
    )
    if np.unique(x).size < 2:
        raise FitError("all x values coincide")

    weighted = bool(np.all(np.isfinite(sigma) & (sigma > 0)))
    if not weighted:
        logger.warning("missing or non-positive sigma, falling back to an unweighted fit")
    w = 1 / sigma**2 if weighted else np.ones_like(x)

    total = w.sum()
    x_mean = w @ x / total
    dx = x - x_mean
    sxx = w @ (dx * dx)
    if not sxx > 0:
        raise FitError("singular design matrix")

    slope = w @ (dx * y) / sxx
    intercept = w @ y / total - slope * x_mean
    covariance = np.array(
        [
            [1 / total + x_mean**2 / sxx, -x_mean / sxx],
            [-x_mean / sxx, 1 / sxx],
        ]
    )

    residuals = y - intercept - slope * x
    chi2 = float(w @ (residuals * residuals))
    dof = x.size - 2
    if not weighted:
        covariance = covariance * chi2 / dof

    return FitLine(
        slope=float(slope),
        intercept=float(intercept),
        covariance=covariance,
        chi2=chi2,
        dof=dof,
        weighted=weighted,
    )


def step_a_eta(
    spectra_vs_n_add: Iterable[SweepRecord], far_detuning: Optional[float] = None
) -> EtaProfile:
    """η_a(Δ_a) = 1 - s(Δ_a)/s_∞ from the n_add slopes.

    `far_detuning` (rad/s) selects the reference points; by default only
    the outermost detunings are used.
    """

    detunings, lines = fit_sweep_lines(spectra_vs_n_add, "n_add")
    slopes, slope_var = _slopes(lines)
    far = _far_mask(detunings, far_detuning)

    weights = _inverse_variance(slope_var[far])
    reference = _weighted_mean(slopes[far], weights)
    if not reference > 0:
        raise ProtocolError("far-detuned n_add slope must be positive")

    eta = 1 - slopes / reference
    # Jacobian of η_i with respect to every slope, including the shared s_∞
    jacobian = -np.diag(1 / np.full_like(slopes, reference))
    share = np.zeros_like(slopes)
    share[far] = weights / weights.sum()
    jacobian += np.outer(slopes / reference**2, share)
    covariance = jacobian @ np.diag(slope_var) @ jacobian.T

    return EtaProfile(
        detunings=detunings,
        eta=eta,
        covariance=covariance,
        far_mask=far,
        reference_slope=Measurement(reference, math.sqrt(1 / weights.sum())),
        lines=tuple(lines),
    )


def step_b_losses(
    spectra_vs_n_vts: Iterable[SweepRecord],
    eta_measured: EtaProfile,
    params: ModeParams,
    eta_floor: float = constants.ETA_FLOOR,
) -> tuple[Measurement, Measurement]:
    """(t_loss, t_leak) from the n_vts slopes and the Step A efficiencies."""

    detunings, lines = fit_sweep_lines(spectra_vs_n_vts, "n_vts")
    _require_same_grid(detunings, eta_measured)
    lam, lam_var = _slopes(lines)
    mu, mu_var = _intercepts(lines)

    eta_var = np.diag(eta_measured.covariance)
    protocol = _Protocol(params, eta_measured.far_mask, eta_floor, lam_var, mu_var)
    protocol.freeze(eta_measured.eta, eta_var, lam, mu)

    m = lam.size
    x = np.concatenate([lam, eta_measured.eta])
    cov = _block_diag(np.diag(lam_var), eta_measured.covariance)
    values, out_cov = _propagate(
        lambda v: protocol.losses(v[:m], v[m:]), x, cov
    )
    sigma = np.sqrt(np.diag(out_cov))
    return Measurement(values[0], sigma[0]), Measurement(values[1], sigma[1])


def step_c_baths(
    intercepts: Sequence[FitLine],
    eta_measured: EtaProfile,
    t_loss: Measurement,
    params: ModeParams,
    eta_floor: float = constants.ETA_FLOOR,
) -> tuple[Measurement, Measurement]:
    """(n_ext, n_loss) from the intercepts of the Step B lines.

    `intercepts` are the n_vts lines in detuning order, as returned by
    `fit_sweep_lines`.
    """

    if len(intercepts) != eta_measured.eta.size:
        raise ProtocolError("intercepts and eta_a profile must share one grid")

    lam, lam_var = _slopes(intercepts)
    mu, mu_var = _intercepts(intercepts)
    eta_var = np.diag(eta_measured.covariance)
    protocol = _Protocol(params, eta_measured.far_mask, eta_floor, lam_var, mu_var)
    protocol.freeze(eta_measured.eta, eta_var, lam, mu)

    if t_loss.value >= 1:
        logger.warning("t_loss = 1 leaves n_loss unidentifiable")
        n_ext, _ = protocol.baths(mu, eta_measured.eta, t_loss.value)
        return Measurement(n_ext, math.inf), Measurement(math.nan, math.inf)

    m = mu.size
    x = np.concatenate([mu, eta_measured.eta, [t_loss.value]])
    cov = _block_diag(np.diag(mu_var), eta_measured.covariance, [[t_loss.sigma**2]])
    values, out_cov = _propagate(
        lambda v: protocol.baths(v[:m], v[m : 2 * m], v[-1]), x, cov
    )
    sigma = np.sqrt(np.diag(out_cov))
    return Measurement(values[0], sigma[0]), Measurement(values[1], sigma[1])


def _require_same_grid(detunings: np.ndarray, eta_measured: EtaProfile):
    if detunings.shape != eta_measured.detunings.shape or not np.allclose(
        detunings, eta_measured.detunings, rtol=1e-12, atol=0
    ):
        raise ProtocolError("n_add and n_vts sweeps must share one detuning grid")


def shot_noise(
    qubit: QubitParams,
    params: ModeParams,
    timing: PulseTiming,
    a0: float,
    t_loss: float,
) -> float:
    """Qubit decoherence shot noise referred to the antenna input."""

    chi2 = params.chi**2
    prefactor = (chi2 + params.kappa_r**2) * params.kappa_r / (
        chi2 * params.kappa_r_c * params.kappa_a * t_loss
    )
    return prefactor * (qubit.gamma_2r * timing.tau_w - math.log(a0)) / timing.tau_p


def assemble_system_noise(
    qubit: QubitParams,
    params: ModeParams,
    baths: BathPopulations,
    timing: PulseTiming,
    a0: float,
) -> tuple[float, float, float]:
    """(n_para, n_shot, n_sys) referred to the antenna input."""

    n_shot = shot_noise(qubit, params, timing, a0, baths.t_loss)
    n_para = baths.n_para
    return n_para, n_shot, n_para + n_shot


def calibrate(
    spectra_vs_n_add: Sequence[SweepRecord],
    spectra_vs_n_vts: Sequence[SweepRecord],
    params: ModeParams,
    qubit: QubitParams,
    timing: PulseTiming,
    a0: Optional[float] = None,
    n_vts: float = constants.N_VTS,
    n_add: float = 0.0,
    far_detuning: Optional[float] = None,
    eta_floor: float = constants.ETA_FLOOR,
) -> CalibrationResult:
    """Runs Steps A to C and the system-noise budget with one joint covariance.

    The errors of every reported quantity come from the full covariance of
    all fitted slopes and intercepts, so correlations between the steps are
    kept. `n_vts` is the blackbody population the budget is quoted at, and
    `n_add` the added noise folded into the antenna population.
    """

    a0 = ReadoutModel.from_qubit(qubit).a0 if a0 is None else a0
    if far_detuning is None:
        far_detuning = constants.FAR_DETUNING_CHI * params.chi

    eta_profile = step_a_eta(spectra_vs_n_add, far_detuning)
    detunings, vts_lines = fit_sweep_lines(spectra_vs_n_vts, "n_vts")
    _require_same_grid(detunings, eta_profile)

    slopes, slope_var = _slopes(eta_profile.lines)
    lam, lam_var = _slopes(vts_lines)
    mu, mu_var = _intercepts(vts_lines)
    eta_var = np.diag(eta_profile.covariance)

    protocol = _Protocol(
        params, eta_profile.far_mask, eta_floor, lam_var, mu_var, slope_var
    )
    protocol.freeze(eta_profile.eta, eta_var, lam, mu)

    def estimates(v: np.ndarray) -> np.ndarray:
        m = slopes.size
        eta = protocol.eta(v[:m])
        t_loss, t_leak = protocol.losses(v[m : 2 * m], eta)
        n_ext, n_loss = protocol.baths(v[2 * m :], eta, t_loss)
        n_para = n_loss * (1 - t_loss) / t_loss + n_vts * t_leak
        n_shot = shot_noise(qubit, params, timing, a0, t_loss)
        n_a = params.gamma * n_vts + (1 - params.gamma) * (n_ext + n_add)
        return np.array(
            [t_loss, t_leak, n_ext, n_loss, n_para, n_shot, n_para + n_shot, n_a]
        )

    x = np.concatenate([slopes, lam, mu])
    m = slopes.size
    cov = np.zeros((3 * m, 3 * m))
    cov[:m, :m] = np.diag(slope_var)
    for i, line in enumerate(vts_lines):
        block = [m + i, 2 * m + i]
        cov[np.ix_(block, block)] = line.covariance[::-1, ::-1]

    logger.debug(
        "calibrating with %d of %d detunings above eta_a = %.2f",
        int(protocol.use.sum()),
        eta_profile.eta.size,
        eta_floor,
    )

    values, out_cov = _propagate(estimates, x, cov)
    sigma = np.sqrt(np.clip(np.diag(out_cov), 0, None))
    if values[0] >= 1:
        logger.warning("t_loss = 1 leaves n_loss unidentifiable")
        sigma[3] = math.inf
    measured = {
        name: Measurement(float(v), float(s))
        for name, v, s in zip(ESTIMATES, values, sigma)
    }

    temperatures = {}
    for name in ("n_ext", "n_loss", "n_a", "n_sys"):
        population = measured[name]
        if population.value > 0 and math.isfinite(population.value):
            temperatures[name] = temperature_measurement(params.f_a, population)

    return CalibrationResult(
        **measured,
        covariance=out_cov,
        temperatures=temperatures,
        eta=eta_profile,
    )


def synthesize_sweeps(
    params: ModeParams,
    truth: BathPopulations,
    timing: PulseTiming,
    detunings: Sequence[float],
    n_add_values: Sequence[float] = constants.N_ADD_VALUES,
    n_vts_values: Sequence[float] = constants.N_VTS_VALUES,
    sigma: float = constants.CALIBRATION_SIGMA,
    seed=None,
) -> tuple[list[SweepRecord], list[SweepRecord]]:
    """Noisy Step A and Step B sweeps generated from `radiometer_response`."""

    rng = np.random.default_rng(seed)

    def record(delta_a, control, value, baths):
        clean = radiometer_response(params, baths, timing, delta_a)
        noisy = clean + rng.normal(0.0, sigma) if sigma > 0 else clean
        return SweepRecord(delta_a, control, value, noisy, sigma if sigma > 0 else None)

    add_records = [
        record(d, "n_add", v, truth.with_(n_add=v))
        for d in detunings
        for v in n_add_values
    ]
    vts_records = [
        record(d, "n_vts", v, truth.with_(n_vts=v, n_add=0.0))
        for d in detunings
        for v in n_vts_values
    ]
    return add_records, vts_records


def calibration_detunings(params: ModeParams) -> np.ndarray:
    """Dense grid over both dressed lines plus far-detuned reference points."""

    span = constants.CALIBRATION_SPAN_CHI * params.chi
    dense = np.linspace(-span, span, constants.CALIBRATION_POINTS)
    far = np.array(constants.REFERENCE_DETUNINGS_CHI) * params.chi
    return np.sort(np.concatenate([-far, dense, far]))


def calibrate_added_noise(
    powers_mw: Sequence[float],
    n_r_eff: Sequence[float],
    sigma: Optional[Sequence[float]],
    params: ModeParams,
    t_loss: Measurement,
) -> Measurement:
    """n_add per mW of source power, from far-detuned n̄_r^eff versus power."""

    sigma = [None] * len(powers_mw) if sigma is None else list(sigma)
    line = fit_line_weighted(zip(powers_mw, n_r_eff, sigma))
    scale = params.response_scale * t_loss.value
    value = line.slope / scale
    relative = math.hypot(line.slope_sigma / line.slope, t_loss.relative)
    return Measurement(value, abs(value) * relative)
