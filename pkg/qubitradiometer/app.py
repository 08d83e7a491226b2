# Standard library
import os
import sys
import json
import math
import asyncio
import logging
import tempfile
from pathlib import Path
from typing import AsyncIterator, Iterable, List, Optional, Sequence, Tuple

# Third party
import pandas as pd
from tqdm import tqdm

# Local
try:
    from qubitradiometer.config import ExperimentConfig
    from qubitradiometer.dtos import CalibrationResult, ProgressStep, SweepRecord
    from qubitradiometer.dtos.SweepRecord import COLUMNS
    from qubitradiometer.errors import ValidationError
    from qubitradiometer.quantities import temperature_of
    from qubitradiometer.radiometry import (
        compare_oracle,
        run_calibration_seeds,
        sweep_spectra,
    )
    from qubitradiometer.radiometry.antenna import (
        antenna_population,
        parasitic_readout_population,
    )
    from qubitradiometer.radiometry.calibration import (
        assemble_system_noise,
        calibrate,
        calibration_detunings,
        synthesize_sweeps,
    )
    from qubitradiometer.radiometry.metrics import (
        detector_figures,
        equivalent_bandwidth,
        outperform_ratio,
    )
except ImportError:
    from config import ExperimentConfig
    from dtos import CalibrationResult, ProgressStep, SweepRecord
    from dtos.SweepRecord import COLUMNS
    from errors import ValidationError
    from quantities import temperature_of
    from radiometry import compare_oracle, run_calibration_seeds, sweep_spectra
    from radiometry.antenna import antenna_population, parasitic_readout_population
    from radiometry.calibration import (
        assemble_system_noise,
        calibrate,
        calibration_detunings,
        synthesize_sweeps,
    )
    from radiometry.metrics import (
        detector_figures,
        equivalent_bandwidth,
        outperform_ratio,
    )

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SMALL_PROBE_LIMIT = 0.05  # γ·n_probe below which the analytic η_a must hold
RECOVERED = ("t_loss", "t_leak", "n_ext", "n_loss")


#########
# HELPERS
#########


def write_atomic(path: Path, write) -> Path:
    """Writes through a temporary sibling so a failed command leaves no file."""

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            write(f)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

    return path


def write_table(path: Path, rows: List[dict], columns: Sequence[str]) -> Path:
    frame = pd.DataFrame(rows, columns=list(columns))
    return write_atomic(
        path, lambda f: frame.to_csv(f, index=False, float_format="%.12g")
    )


def finite_or_null(value):
    """Replaces NaN and infinities with None so the report stays strict JSON."""

    if isinstance(value, dict):
        return {key: finite_or_null(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [finite_or_null(item) for item in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_report(path: Path, report: dict) -> Path:
    def dump(f):
        json.dump(finite_or_null(report), f, indent=2, sort_keys=True, allow_nan=False)
        f.write("\n")

    return write_atomic(path, dump)


def load_sweeps(paths: Iterable[Path]) -> Tuple[List[SweepRecord], List[SweepRecord]]:
    """Reads calibration sweeps from CSV files into the n_add and n_vts families."""

    frames = []
    for path in paths:
        frame = pd.read_csv(path)
        missing = [c for c in COLUMNS if c != "sigma" and c not in frame.columns]
        if missing:
            raise ValidationError(f"{path}: missing column '{missing[0]}'")
        if "sigma" not in frame.columns:
            logger.warning("%s has no sigma column, fits will be unweighted", path)
            frame["sigma"] = float("nan")
        frames.append(frame[list(COLUMNS)])

    if not frames:
        raise ValidationError("no calibration data given")

    records = [
        SweepRecord(
            delta_a=float(row.delta_a_rad_s),
            control_name=str(row.control_name),
            control_value=float(row.control_value),
            n_r_eff=float(row.n_r_eff),
            sigma=float(row.sigma),
        )
        for row in pd.concat(frames, ignore_index=True).itertuples(index=False)
    ]
    add = [r for r in records if r.control_name == "n_add"]
    vts = [r for r in records if r.control_name == "n_vts"]
    return add, vts


def _report(command: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **fields}


######
# MAIN
######


class App:
    def __init__(
        self,
        config: ExperimentConfig,
        out: Path,
        jobs: int = 1,
        show_progress: bool = True,
    ):
        # State
        self.config = config
        self.out = Path(out)
        self.jobs = jobs
        self.show_progress = show_progress
        self.steps: List[ProgressStep] = []
        self.rows: List[dict] = []
        self.bars = {}

    def update(self, step: ProgressStep):
        existing_step = next((s for s in self.steps if s.index == step.index), None)
        if existing_step:
            existing_step.value = step.value
            existing_step.message = step.message
            existing_step.num_points = step.num_points
            existing_step.end_time = step.end_time
        else:
            self.steps.append(step)
            total = round(step.num_points / step.value) if step.value else None
            self.bars[step.index] = tqdm(
                total=total,
                desc=step.message,
                unit="pt",
                file=sys.stderr,
                disable=not self.show_progress,
                leave=False,
            )

        bar = self.bars[step.index]
        bar.update(step.num_points - bar.n)
        if step.end_time:
            bar.close()

    async def collect(self, steps: AsyncIterator[ProgressStep]) -> List[dict]:
        self.rows = []
        try:
            async for step in steps:
                self.rows.append(step.result)
                self.update(step)
                await asyncio.sleep(0)
        finally:
            for bar in self.bars.values():
                bar.close()

        return self.rows

    def spectra(self) -> dict:
        rows = asyncio.run(self.collect(sweep_spectra(self.config, self.jobs)))
        rows.sort(key=lambda r: (r["tau_p_s"], r["delta_a_rad_s"]))
        write_table(self.out, rows, ("tau_p_s", "delta_a_rad_s", "n_r_eff", "sigma"))
        return {"rows": len(rows), "path": str(self.out)}

    def oracle_compare(self) -> dict:
        rows = asyncio.run(self.collect(compare_oracle(self.config, self.jobs)))
        rows.sort(key=lambda r: (r["n_probe"], r["delta_a_rad_s"]))
        write_table(
            self.out,
            rows,
            (
                "delta_a_rad_s",
                "n_probe",
                "eta_analytic",
                "eta_oracle",
                "abs_diff",
                "gamma_analytic",
                "gamma_oracle",
            ),
        )

        gamma = self.config.mode_params.gamma
        small = [r["abs_diff"] for r in rows if gamma * r["n_probe"] <= SMALL_PROBE_LIMIT]
        large = max(r["n_probe"] for r in rows)
        return {
            "rows": len(rows),
            "path": str(self.out),
            "max_small_probe_diff": max(small) if small else None,
            "oracle_below_linear": any(
                r["gamma_oracle"] < r["gamma_analytic"]
                for r in rows
                if r["n_probe"] == large
            ),
        }

    def _calibrate(self, add, vts) -> CalibrationResult:
        config = self.config
        params = config.mode_params
        return calibrate(
            add,
            vts,
            params,
            config.qubit_params,
            config.pulse_timing,
            a0=config.a0,
            n_vts=config.bath_populations.n_vts,
            n_add=config.bath_populations.n_add,
            far_detuning=config.calibration.far_detuning_chi * params.chi,
            eta_floor=config.calibration.eta_floor,
        )

    def calibrate(
        self,
        data: Sequence[Path] = (),
        synthetic: bool = False,
        seeds: Optional[int] = None,
    ) -> dict:
        config = self.config

        if seeds:
            runs = asyncio.run(
                self.collect(run_calibration_seeds(config, seeds, self.jobs))
            )
            runs.sort(key=lambda r: r["seed"])
            coverage = {
                name: sum(r["within_2sigma"][name] for r in runs) / len(runs)
                for name in RECOVERED
            }
            report = _report(
                "calibrate",
                mode="recovery",
                seeds=seeds,
                truth=config.baths.model_dump(),
                coverage_2sigma=coverage,
                runs=runs,
            )
        else:
            if synthetic:
                params = config.mode_params
                add, vts = synthesize_sweeps(
                    params,
                    config.bath_populations,
                    config.pulse_timing,
                    calibration_detunings(params),
                    config.calibration.n_add_values,
                    config.calibration.n_vts_values,
                    config.calibration.noise_sigma,
                    config.seed,
                )
            else:
                add, vts = load_sweeps(data)

            result = self._calibrate(add, vts)
            report = _report(
                "calibrate",
                mode="synthetic" if synthetic else "data",
                **result.to_dict(),
            )
            report["eta_a"] = {
                "delta_a_rad_s": result.eta.detunings.tolist(),
                "value": result.eta.eta.tolist(),
                "sigma": result.eta.sigma.tolist(),
            }

        write_report(self.out, report)
        return report

    def metrics(self) -> dict:
        config = self.config
        params, qubit, timing = (
            config.mode_params,
            config.qubit_params,
            config.pulse_timing,
        )
        baths = config.bath_populations

        n_r_para = config.metrics.n_r_para
        if n_r_para is None:
            n_r_para = parasitic_readout_population(params, baths)

        figures = detector_figures(qubit, params, timing, config.a0, n_r_para)
        ratios = []
        for n_sys_lin in config.metrics.n_sys_lin:
            for primed in (False, True):
                ratios.append(
                    {
                        "n_sys_lin": n_sys_lin,
                        "primed": primed,
                        "ratio": outperform_ratio(
                            figures, params, timing, n_sys_lin, primed
                        ),
                        "equivalent_bandwidth_rad_s": equivalent_bandwidth(
                            figures, params, timing, n_sys_lin, primed
                        ),
                    }
                )

        n_para, n_shot, n_sys = assemble_system_noise(
            qubit, params, baths, timing, config.a0
        )
        n_a = antenna_population(params, baths)
        report = _report(
            "metrics",
            a0=config.a0,
            figures=figures.to_dict(),
            outperform=ratios,
            system_noise={"n_para": n_para, "n_shot": n_shot, "n_sys": n_sys},
            n_a=n_a,
            temperatures_k={
                name: temperature_of(params.f_a, value)
                for name, value in (("n_sys", n_sys), ("n_a", n_a))
                if value > 0
            },
        )
        write_report(self.out, report)
        return report

    def start(self, command: str, **kwargs) -> dict:
        commands = {
            "spectra": self.spectra,
            "oracle-compare": self.oracle_compare,
            "calibrate": self.calibrate,
            "metrics": self.metrics,
        }
        return commands[command](**kwargs)
