# Standard library
import sys
import logging
import argparse
from pathlib import Path
from typing import List, Optional

# Local
try:
    from qubitradiometer.app import App
    from qubitradiometer.config import load_config
    from qubitradiometer.errors import (
        ConfigError,
        DomainError,
        RadiometerError,
        ValidationError,
    )
except ImportError:
    from app import App
    from config import load_config
    from errors import ConfigError, DomainError, RadiometerError, ValidationError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

DEFAULT_OUTPUTS = {
    "spectra": "spectra.csv",
    "oracle-compare": "oracle_compare.csv",
    "calibrate": "calibration.json",
    "metrics": "metrics.json",
}


#########
# HELPERS
#########


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubitradiometer",
        description="Model, calibrate and rate a qubit-dephasing microwave radiometer.",
    )
    parser.add_argument(
        "command",
        choices=list(DEFAULT_OUTPUTS),
        type=str,
        help="Workflow to run.",
    )
    parser.add_argument(
        "--config",
        default=None,
        required=False,
        type=Path,
        help="YAML experiment file. Defaults describe the reference device.",
    )
    parser.add_argument(
        "--out",
        default=None,
        required=False,
        type=Path,
        help="Output file (CSV for tables, JSON for reports).",
    )
    parser.add_argument(
        "--seed",
        default=None,
        required=False,
        type=int,
        help="Overrides the config seed.",
    )
    parser.add_argument(
        "--tau-p",
        default=None,
        required=False,
        type=float,
        help="Overrides the pump duration in seconds.",
    )
    parser.add_argument(
        "--jobs",
        default=1,
        required=False,
        type=int,
        help="Worker threads for grid points.",
    )
    parser.add_argument(
        "--synthetic",
        action="store_true",
        help="calibrate: generate the sweeps from the configured baths.",
    )
    parser.add_argument(
        "--seeds",
        default=None,
        required=False,
        type=int,
        help="calibrate: run this many synthetic recoveries and report coverage.",
    )
    parser.add_argument(
        "--data",
        default=[],
        required=False,
        nargs="+",
        type=Path,
        help="calibrate: sweep CSV files with the SweepRecord columns.",
    )
    parser.add_argument(
        "--no-progress",
        action="store_true",
        help="Hide progress bars.",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Log debug output to standard error.",
    )
    return parser


def _fail(message: str, code: int) -> int:
    print(f"\033[1;31m{message}\033[0m", file=sys.stderr)
    return code


def _summary(command: str, result: dict) -> str:
    if command == "oracle-compare":
        return (
            f"max |eta_analytic - eta_oracle| for small probes: "
            f"{result['max_small_probe_diff']}"
        )
    if command == "metrics":
        figures = result["figures"]
        return (
            f"eta = {figures['eta']:.3f}, P_dc = {figures['p_dc']:.4f}, "
            f"n_sys = {result['system_noise']['n_sys']:.3f}"
        )
    if command == "calibrate" and "coverage_2sigma" in result:
        return ", ".join(
            f"{name}: {fraction:.0%}"
            for name, fraction in result["coverage_2sigma"].items()
        )
    if command == "calibrate":
        n_sys = result["estimates"]["n_sys"]
        return f"n_sys = {n_sys['value']:.3f} ± {n_sys['sigma']:.3f}"

    return f"{result['rows']} rows"


######
# MAIN
######


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = load_config(args.config).with_overrides(
            seed=args.seed, tau_p=args.tau_p
        )
    except (ConfigError, ValidationError, DomainError) as e:
        return _fail(f"Invalid configuration: {e}", EXIT_CONFIG)

    if args.jobs < 1:
        return _fail("--jobs must be at least 1", EXIT_CONFIG)
    if args.seeds is not None and args.seeds < 1:
        return _fail("--seeds must be at least 1", EXIT_CONFIG)

    kwargs = {}
    if args.command == "calibrate":
        if not (args.data or args.synthetic or args.seeds):
            return _fail("calibrate needs --data, --synthetic or --seeds", EXIT_CONFIG)
        kwargs = {"data": args.data, "synthetic": args.synthetic, "seeds": args.seeds}

    out = args.out or Path(DEFAULT_OUTPUTS[args.command])
    print(f"\033[1;90mRunning {args.command}\033[0m", file=sys.stderr)

    app = App(config, out, jobs=args.jobs, show_progress=not args.no_progress)
    try:
        result = app.start(args.command, **kwargs)
    except (ConfigError, ValidationError, OSError) as e:
        return _fail(f"Invalid input: {e}", EXIT_CONFIG)
    except RadiometerError as e:
        return _fail(f"{args.command} failed: {e}", EXIT_NUMERIC)

    print(f"\033[1;35m{_summary(args.command, result)}\033[0m", file=sys.stderr)
    print(f"\033[1;90mWrote\033[0m {out}", file=sys.stderr)
    return EXIT_OK
