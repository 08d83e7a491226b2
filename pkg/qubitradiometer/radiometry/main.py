# Standard library
import time
import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Callable

# Third party
import numpy as np

# Local
try:
    from qubitradiometer.config import ExperimentConfig
    from qubitradiometer.dtos import ProgressStep
    from qubitradiometer.dtos.CalibrationResult import ESTIMATES
    from qubitradiometer.errors import RadiometerError
    from qubitradiometer.radiometry.analytic import (
        eta_a,
        mean_dephasing_transmitted,
        radiometer_response,
    )
    from qubitradiometer.radiometry.calibration import (
        calibrate,
        calibration_detunings,
        synthesize_sweeps,
    )
    from qubitradiometer.radiometry.oracle import (
        dephasing_ratio,
        eta_from_ratio,
        mean_dephasing_rate,
    )
except ImportError:
    from config import ExperimentConfig
    from dtos import ProgressStep
    from dtos.CalibrationResult import ESTIMATES
    from errors import RadiometerError
    from radiometry.analytic import (
        eta_a,
        mean_dephasing_transmitted,
        radiometer_response,
    )
    from radiometry.calibration import (
        calibrate,
        calibration_detunings,
        synthesize_sweeps,
    )
    from radiometry.oracle import (
        dephasing_ratio,
        eta_from_ratio,
        mean_dephasing_rate,
    )

logger = logging.getLogger(__name__)


#########
# HELPERS
#########


def _located(fn: Callable, where: str) -> Callable:
    def run():
        try:
            return fn()
        except RadiometerError as e:
            raise type(e)(f"{where}: {e}") from e

    return run


async def _fan_out(tasks: list[Callable], jobs: int):
    """Runs blocking grid points on a thread pool, yielding results as they land."""

    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as executor:
        futures = [loop.run_in_executor(executor, task) for task in tasks]
        try:
            for future in asyncio.as_completed(futures):
                yield await future
        finally:
            for future in futures:
                future.cancel()


def _spectrum_point(config: ExperimentConfig, timing, delta_a: float) -> dict:
    n_r_eff = radiometer_response(
        config.mode_params, config.bath_populations, timing, delta_a
    )
    return {
        "tau_p_s": timing.tau_p,
        "delta_a_rad_s": float(delta_a),
        "n_r_eff": n_r_eff,
        "sigma": 0.0,
    }


def _oracle_point(config: ExperimentConfig, delta_a: float, n_probe: float) -> dict:
    params, timing = config.mode_params, config.pulse_timing
    ratio = dephasing_ratio(params, n_probe, timing, config.oracle_config, delta_a)
    eta_analytic = eta_a(params, timing, delta_a)
    eta_oracle = eta_from_ratio(params, timing, ratio, n_probe)
    return {
        "delta_a_rad_s": float(delta_a),
        "n_probe": n_probe,
        "eta_analytic": eta_analytic,
        "eta_oracle": eta_oracle,
        "abs_diff": abs(eta_analytic - eta_oracle),
        "gamma_analytic": mean_dephasing_transmitted(params, n_probe, timing, delta_a),
        "gamma_oracle": mean_dephasing_rate(ratio, timing),
    }


def _recovery_run(config: ExperimentConfig, seed: np.random.SeedSequence) -> dict:
    params, truth = config.mode_params, config.bath_populations
    add, vts = synthesize_sweeps(
        params,
        truth,
        config.pulse_timing,
        calibration_detunings(params),
        config.calibration.n_add_values,
        config.calibration.n_vts_values,
        config.calibration.noise_sigma,
        seed,
    )
    result = calibrate(
        add,
        vts,
        params,
        config.qubit_params,
        config.pulse_timing,
        a0=config.a0,
        n_vts=truth.n_vts,
        far_detuning=config.calibration.far_detuning_chi * params.chi,
        eta_floor=config.calibration.eta_floor,
    )
    targets = {
        "t_loss": truth.t_loss,
        "t_leak": truth.t_leak,
        "n_ext": truth.n_ext,
        "n_loss": truth.n_loss,
    }
    estimates = result.estimates()
    return {
        "seed": int(seed.spawn_key[-1]) if seed.spawn_key else 0,
        "estimates": {name: estimates[name].to_dict() for name in ESTIMATES},
        "within_2sigma": {
            name: estimates[name].within(value) for name, value in targets.items()
        },
    }


######
# MAIN
######


async def sweep_spectra(config: ExperimentConfig, jobs: int = 1):
    """Radiometer spectra for every pump duration in the sweep."""

    detunings = config.detunings()
    for index, tau_p in enumerate(config.sweep.tau_p_values):
        start_time = time.time()
        timing = config.with_overrides(tau_p=tau_p).pulse_timing
        tasks = [
            _located(
                partial(_spectrum_point, config, timing, d),
                f"tau_p={tau_p:.3g} s, delta_a={d:.6g} rad/s",
            )
            for d in detunings
        ]

        done = 0
        async for row in _fan_out(tasks, jobs):
            done += 1
            yield ProgressStep(
                index=index,
                message=f"Spectrum at tau_p = {tau_p * 1e6:.2f} us",
                start_time=start_time,
                end_time=time.time() if done == len(tasks) else None,
                value=done / len(tasks),
                num_points=done,
                result=row,
            )


async def compare_oracle(config: ExperimentConfig, jobs: int = 1):
    """η_a from the analytic correlators against the exact Gaussian integration."""

    detunings = config.detunings()
    for index, n_probe in enumerate(config.sweep.n_probe_values):
        start_time = time.time()
        tasks = [
            _located(
                partial(_oracle_point, config, d, n_probe),
                f"n_probe={n_probe:g}, delta_a={d:.6g} rad/s",
            )
            for d in detunings
        ]

        done = 0
        async for row in _fan_out(tasks, jobs):
            done += 1
            yield ProgressStep(
                index=index,
                message=f"Oracle at n_probe = {n_probe:g}",
                start_time=start_time,
                end_time=time.time() if done == len(tasks) else None,
                value=done / len(tasks),
                num_points=done,
                result=row,
            )


async def run_calibration_seeds(
    config: ExperimentConfig, n_seeds: int, jobs: int = 1
):
    """Synthetic calibration recoveries, one independent noise stream per seed."""

    start_time = time.time()
    streams = np.random.SeedSequence(config.seed).spawn(n_seeds)
    tasks = [
        _located(partial(_recovery_run, config, stream), f"seed #{i}")
        for i, stream in enumerate(streams)
    ]

    done = 0
    async for row in _fan_out(tasks, jobs):
        done += 1
        yield ProgressStep(
            index=0,
            message="Calibration recovery",
            start_time=start_time,
            end_time=time.time() if done == n_seeds else None,
            value=done / n_seeds,
            num_points=done,
            result=row,
        )
