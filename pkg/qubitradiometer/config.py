# Standard library
import logging
from pathlib import Path
from typing import List, Optional, Union

# Third party
import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic import ValidationError as PydanticValidationError

# Local
try:
    from qubitradiometer import constants
    from qubitradiometer.dtos import (
        BathPopulations,
        ModeParams,
        OracleConfig,
        PulseTiming,
        QubitParams,
        ReadoutModel,
    )
    from qubitradiometer.errors import ConfigError
except ImportError:
    import constants
    from dtos import (
        BathPopulations,
        ModeParams,
        OracleConfig,
        PulseTiming,
        QubitParams,
        ReadoutModel,
    )
    from errors import ConfigError

logger = logging.getLogger(__name__)


def _sorted_grid(values: Optional[List[float]], name: str) -> Optional[List[float]]:
    if values is None:
        return values
    if not values:
        raise ValueError(f"{name} must not be empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"{name} must be strictly increasing")
    return values


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModeSection(_Section):
    f_r: float = Field(default=constants.F_R, description="Readout cavity frequency (Hz).")
    f_p: float = Field(default=constants.F_P, description="JPC pump frequency (Hz).")
    f_a: float = Field(
        default=constants.F_A,
        description="Antenna frequency (Hz); f_a - f_r - f_p sets the default detuning.",
    )
    chi_hz: float = Field(default=constants.CHI_HZ, description="Dispersive shift χ/2π (Hz).")
    kappa_r_c_hz: float = Field(
        default=constants.KAPPA_R_C_HZ,
        description="Readout external linewidth κ_r,c/2π (Hz).",
    )
    kappa_r_i_hz: float = Field(
        default=constants.KAPPA_R_I_HZ,
        description="Readout internal linewidth κ_r,i/2π (Hz).",
    )
    kappa_a_c_hz: float = Field(
        default=constants.KAPPA_A_C_HZ,
        description="Antenna external linewidth κ_a,c/2π (Hz).",
    )
    kappa_a_i_hz: float = Field(
        default=constants.KAPPA_A_I_HZ,
        description="Antenna internal linewidth κ_a,i/2π (Hz), coupling to the blackbody.",
    )
    conversion_efficiency: float = Field(
        default=1.0, description="Power efficiency of the JPC frequency conversion."
    )

    def to_params(self) -> ModeParams:
        return ModeParams.from_linewidths(**self.model_dump())


class QubitSection(_Section):
    t2r: float = Field(default=constants.T2R, description="Ramsey coherence time T_2R (s).")
    t1: float = Field(default=constants.T1, description="Energy relaxation time (s).")
    p_e_ini: float = Field(
        default=constants.P_E_INI, description="Residual excited population after reset."
    )
    p_read_e_given_g: float = Field(
        default=constants.P_READ_E_GIVEN_G, description="Readout error P(e|g)."
    )
    p_read_g_given_e: float = Field(
        default=constants.P_READ_G_GIVEN_E, description="Readout error P(g|e)."
    )
    f_ge: float = Field(default=constants.F_GE, description="Qubit g-e frequency (Hz).")
    f_ef: float = Field(default=constants.F_EF, description="Qubit e-f frequency (Hz).")
    detection_floor: float = Field(
        default=constants.DETECTION_FLOOR,
        description="Smallest resolvable Γ_2R change, in units of κ_r.",
    )

    def to_params(self, mode: ModeParams) -> QubitParams:
        if not self.t2r > 0:
            raise ValueError("t2r must be positive")
        return QubitParams(
            gamma_2r=1 / self.t2r,
            t1=self.t1,
            p_e_ini=self.p_e_ini,
            p_read_e_given_g=self.p_read_e_given_g,
            p_read_g_given_e=self.p_read_g_given_e,
            f_ge=self.f_ge,
            f_ef=self.f_ef,
            delta_gamma_2r=self.detection_floor * mode.kappa_r,
        )


class BathSection(_Section):
    n_vts: float = Field(default=constants.N_VTS, description="Blackbody (VTS) population.")
    n_ext: float = Field(default=constants.N_EXT, description="Reflected external bath.")
    n_add: float = Field(default=0.0, description="Added white-noise population.")
    n_loss: float = Field(default=constants.N_LOSS, description="Lossy-link bath.")
    t_loss: float = Field(default=constants.T_LOSS, description="Link power transmission.")
    t_leak: float = Field(
        default=constants.T_LEAK, description="White blackbody leakage past the antenna."
    )

    def to_baths(self) -> BathPopulations:
        return BathPopulations(**self.model_dump())


class TimingSection(_Section):
    tau_p: float = Field(default=constants.TAU_P, description="Pump duration τ_p (s).")
    tau_w: float = Field(default=constants.TAU_W, description="Wait after the pump (s).")
    n_rep: int = Field(default=constants.N_REP, description="Shots per Ramsey phase.")

    def to_timing(self) -> PulseTiming:
        return PulseTiming.from_pump_and_wait(self.tau_p, self.tau_w, self.n_rep)


class SweepSection(_Section):
    detuning_span_chi: float = Field(
        default=3.0, description="Half-width of the Δ_a grid in units of χ."
    )
    detuning_points: int = Field(default=41, description="Number of Δ_a points.")
    delta_a_hz: Optional[List[float]] = Field(
        default=None, description="Explicit Δ_a/2π grid (Hz); overrides the span."
    )
    tau_p_values: List[float] = Field(
        default=[0.54e-6, 1.08e-6, 2.5e-6],
        description="Pump durations for the spectra family (s).",
    )
    n_probe_values: List[float] = Field(
        default=[1e-3, 2.0], description="Blackbody populations for oracle-compare."
    )

    @field_validator("detuning_points")
    @classmethod
    def _points(cls, value: int) -> int:
        if value < 1:
            raise ValueError("detuning grid must not be empty")
        return value

    @field_validator("delta_a_hz", "tau_p_values", "n_probe_values")
    @classmethod
    def _grids(cls, value, info):
        return _sorted_grid(value, info.field_name)


class OracleSection(_Section):
    epsilon: float = Field(default=1e-8, description="Seed occupation of the readout mode.")
    rtol: float = Field(default=1e-10, description="Relative integrator tolerance.")
    atol: float = Field(default=1e-12, description="Absolute integrator tolerance.")
    max_step: float = Field(default=float("inf"), description="Largest step (s).")
    isolate_cavity_when_off: bool = Field(
        default=False,
        description="Drop the κ_r,c channel while the pump is off.",
    )
    check_convergence: bool = Field(
        default=True, description="Repeat each run with ε/10 and compare."
    )

    def to_config(self) -> OracleConfig:
        return OracleConfig(**self.model_dump())


class CalibrationSection(_Section):
    noise_sigma: float = Field(
        default=constants.CALIBRATION_SIGMA,
        description="Standard error of each synthetic n̄_r^eff point.",
    )
    n_add_values: List[float] = Field(default=list(constants.N_ADD_VALUES))
    n_vts_values: List[float] = Field(default=list(constants.N_VTS_VALUES))
    far_detuning_chi: float = Field(
        default=constants.FAR_DETUNING_CHI,
        description="|Δ_a| beyond which points serve as the white reference (units of χ).",
    )
    eta_floor: float = Field(
        default=constants.ETA_FLOOR,
        description="Smallest η_a used to extract t_loss and n_ext.",
    )

    @field_validator("n_add_values", "n_vts_values")
    @classmethod
    def _grids(cls, value, info):
        return _sorted_grid(value, info.field_name)


class MetricsSection(_Section):
    n_sys_lin: List[float] = Field(
        default=[constants.N_SYS_LIN_IDEAL, constants.N_SYS_LIN_CHAIN],
        description="Linear-amplifier system noise to compare against.",
    )
    a0: Optional[float] = Field(
        default=None, description="Initial contrast; derived from readout errors if unset."
    )
    n_r_para: Optional[float] = Field(
        default=None,
        description="Parasitic readout population; derived from the baths if unset.",
    )


class ExperimentConfig(_Section):
    mode: ModeSection = Field(default_factory=ModeSection)
    qubit: QubitSection = Field(default_factory=QubitSection)
    baths: BathSection = Field(default_factory=BathSection)
    timing: TimingSection = Field(default_factory=TimingSection)
    sweep: SweepSection = Field(default_factory=SweepSection)
    oracle: OracleSection = Field(default_factory=OracleSection)
    calibration: CalibrationSection = Field(default_factory=CalibrationSection)
    metrics: MetricsSection = Field(default_factory=MetricsSection)
    seed: int = Field(default=0, description="Seed of every random stream.")

    @model_validator(mode="after")
    def _records(self):
        # Build every record once so invalid physics fails at load time
        self.mode_params
        self.qubit_params
        self.bath_populations
        self.pulse_timing
        self.oracle_config
        return self

    @property
    def mode_params(self) -> ModeParams:
        return self.mode.to_params()

    @property
    def qubit_params(self) -> QubitParams:
        return self.qubit.to_params(self.mode_params)

    @property
    def bath_populations(self) -> BathPopulations:
        return self.baths.to_baths()

    @property
    def pulse_timing(self) -> PulseTiming:
        return self.timing.to_timing()

    @property
    def oracle_config(self) -> OracleConfig:
        return self.oracle.to_config()

    @property
    def readout_model(self) -> ReadoutModel:
        return ReadoutModel.from_qubit(self.qubit_params)

    @property
    def a0(self) -> float:
        return self.metrics.a0 if self.metrics.a0 is not None else self.readout_model.a0

    def detunings(self) -> np.ndarray:
        """Δ_a grid in rad/s."""

        if self.sweep.delta_a_hz is not None:
            return constants.TWO_PI * np.asarray(self.sweep.delta_a_hz, dtype=float)

        span = self.sweep.detuning_span_chi * self.mode_params.chi
        return np.linspace(-span, span, self.sweep.detuning_points)

    def with_overrides(
        self, seed: Optional[int] = None, tau_p: Optional[float] = None
    ) -> "ExperimentConfig":
        data = self.model_dump()
        if seed is not None:
            data["seed"] = seed
        if tau_p is not None:
            data["timing"]["tau_p"] = tau_p
            data["sweep"]["tau_p_values"] = [tau_p]
        return validate_config(data)


def validate_config(data: Optional[dict]) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data or {})
    except PydanticValidationError as e:
        raise ConfigError(str(e)) from e


def load_config(path: Optional[Union[str, Path]]) -> ExperimentConfig:
    """Reads a YAML experiment file. No path means the device defaults."""

    if path is None:
        return validate_config({})

    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {path}: {e}") from e

    if data is not None and not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping at the top level")

    logger.debug("loaded config from %s", path)
    return validate_config(data)
