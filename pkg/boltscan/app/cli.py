"""
Command-line interface.

    boltscan simulate --preset eq10|eq10-noisy|bolt
    boltscan decompose SIGNAL.csv --modes K ...
    boltscan mf-decompose SIGNAL.csv --se-width W ...
    boltscan spectrum SIGNAL.csv [--mf]
    boltscan analyze SIGNAL.csv --velocity V --blank-time B
    boltscan reproduce [--experiment NAME ...] [--seeds N]

Exit codes: 0 on success, 1 on contract errors (one JSON line
``{"error": <code>, "message": ...}`` on stderr), 2 on usage errors.
Every successful run writes ``provenance.json`` next to its artifacts.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from boltscan import __version__
from boltscan.app.config import resolve_output_dir
from boltscan.core.bolt_analysis import bolt_report, mf_vmd
from boltscan.core.experiments import EXPERIMENTS, run_experiments
from boltscan.core.hilbert_spectrum import detect_transitions, hilbert_spectrum
from boltscan.core.signal_core import Signal
from boltscan.core.synthesis import add_noise, gen_bolt_echo, gen_piecewise
from boltscan.core.vmd_solver import VMDResult, vmd_decompose
from boltscan.errors import BoltscanError, ConfigurationError
from boltscan.schemas.analysis import BoltAnalysisConfig, MfVmdConfig
from boltscan.schemas.run import Preset, Provenance, RunConfig, Subcommand
from boltscan.schemas.synthesis import BoltEchoSpec, PiecewiseToneSpec
from boltscan.schemas.vmd import InitPolicy, VMDConfig
from boltscan.utils.logger import get_logger, setup_logging
from boltscan.utils.plotting import plot_analysis, plot_modes, plot_signal, plot_spectrum
from boltscan.utils.signal_io import (
    atomic_write_text,
    read_signal_csv,
    write_json,
    write_signal_csv,
    write_spectrum_csv,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_USAGE = 2

DEFAULT_NOISY_SNR_DB = 5.0
DEFAULT_MODES = {
    Subcommand.DECOMPOSE: 2,
    Subcommand.MF_DECOMPOSE: 5,
    Subcommand.SPECTRUM: 2,
    Subcommand.ANALYZE: 3,
}
BOLT_OVERRIDES = {
    "bolt_length": "bolt_length",
    "velocity": "wave_velocity",
    "pulse_frequency": "pulse_frequency_hz",
    "pulse_width": "pulse_width",
    "echo_amplitude": "echo_amplitude",
    "decay_time": "decay_time",
    "record_length": "record_length",
}


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--output-dir",
        type=Path,
        default=None,
        help="Artifact directory (default: $BOLTSCAN_OUTPUT_DIR or ./boltscan-out)",
    )
    common.add_argument("--no-plots", action="store_true", help="Skip SVG figures")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Logging level (default: WARNING)",
    )
    common.add_argument(
        "--log-format", default="text", choices=["json", "text"], help="Log format (default: text)"
    )
    return common


def _add_vmd_arguments(parser: argparse.ArgumentParser, default_modes: int) -> None:
    group = parser.add_argument_group("VMD")
    group.add_argument("--modes", type=int, default=default_modes, help="Number of modes K")
    group.add_argument("--alpha", type=float, default=2000.0, help="Bandwidth penalty")
    group.add_argument("--tau", type=float, default=0.1, help="Dual ascent step")
    group.add_argument("--tol", type=float, default=1e-7, help="Convergence tolerance")
    group.add_argument("--max-iters", type=int, default=500, help="Iteration cap")
    group.add_argument(
        "--init", default="uniform", choices=[p.value for p in InitPolicy], help="Omega init"
    )
    group.add_argument("--seed", type=int, default=None, help="Seed for --init random")


def _add_mf_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("Morphological filter")
    group.add_argument("--se-width", type=int, default=None, help="Fixed flat SE width")
    group.add_argument("--se-min-width", type=int, default=1, help="Sweep lower bound")
    group.add_argument("--se-max-width", type=int, default=9, help="Sweep upper bound")
    group.add_argument("--se-threshold", type=float, default=0.95, help="Sweep correlation")
    group.add_argument("--se-centered", action="store_true", help="Center the SE origin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boltscan",
        description="MF-VMD decomposition and bolt bottom-reflection analysis",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")
    common = _common_parser()

    simulate = subparsers.add_parser(
        "simulate", parents=[common], help="Generate a synthetic record"
    )
    simulate.add_argument("--preset", required=True, choices=[p.value for p in Preset])
    simulate.add_argument("--seed", type=int, default=0, help="Noise seed (default: 0)")
    simulate.add_argument(
        "--snr-db", type=float, default=None, help="Noise level (eq10-noisy default: 5 dB)"
    )
    simulate.add_argument("--fs", type=float, default=None, help="Sampling rate in Hz")
    for flag in BOLT_OVERRIDES:
        simulate.add_argument(f"--{flag.replace('_', '-')}", type=float, default=None)

    decompose = subparsers.add_parser("decompose", parents=[common], help="Plain VMD")
    decompose.add_argument("input", type=Path, help="Signal CSV")
    _add_vmd_arguments(decompose, DEFAULT_MODES[Subcommand.DECOMPOSE])

    mf_decompose = subparsers.add_parser(
        "mf-decompose", parents=[common], help="Morphological filter followed by VMD"
    )
    mf_decompose.add_argument("input", type=Path, help="Signal CSV")
    _add_vmd_arguments(mf_decompose, DEFAULT_MODES[Subcommand.MF_DECOMPOSE])
    _add_mf_arguments(mf_decompose)

    spectrum = subparsers.add_parser(
        "spectrum", parents=[common], help="Hilbert spectrum of the decomposed modes"
    )
    spectrum.add_argument("input", type=Path, help="Signal CSV")
    spectrum.add_argument("--mf", action="store_true", help="Decompose with MF-VMD")
    spectrum.add_argument(
        "--split-hz", type=float, default=None, help="Report regime changes across this frequency"
    )
    _add_vmd_arguments(spectrum, DEFAULT_MODES[Subcommand.SPECTRUM])
    _add_mf_arguments(spectrum)

    analyze = subparsers.add_parser(
        "analyze", parents=[common], help="Detect the bottom reflection and estimate length"
    )
    analyze.add_argument("input", type=Path, help="Signal CSV")
    analyze.add_argument("--velocity", type=float, default=6000.0, help="Wave velocity, m/s")
    analyze.add_argument("--blank-time", type=float, default=0.3e-3, help="Blank time, s")
    analyze.add_argument("--min-ratio", type=float, default=3.0, help="Peak/median threshold")
    _add_vmd_arguments(analyze, DEFAULT_MODES[Subcommand.ANALYZE])
    _add_mf_arguments(analyze)

    reproduce = subparsers.add_parser(
        "reproduce", parents=[common], help="Run the reproduction experiments"
    )
    reproduce.add_argument(
        "--experiment",
        action="append",
        choices=list(EXPERIMENTS),
        default=None,
        help="Experiment to run (repeatable; default: all)",
    )
    reproduce.add_argument("--seeds", type=int, default=None, help="Seeds per noisy experiment")
    return parser


def _vmd_config(args: argparse.Namespace) -> VMDConfig:
    return VMDConfig(
        K=args.modes,
        alpha=args.alpha,
        tau=args.tau,
        tol=args.tol,
        max_iters=args.max_iters,
        init=InitPolicy(args.init),
        seed=args.seed,
    )


def _mf_config(args: argparse.Namespace) -> MfVmdConfig:
    return MfVmdConfig(
        se_width=args.se_width,
        se_centered=args.se_centered,
        se_min_width=args.se_min_width,
        se_max_width=args.se_max_width,
        se_threshold=args.se_threshold,
        vmd=_vmd_config(args),
    )


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Translate parsed arguments into a validated RunConfig."""
    subcommand = Subcommand(args.subcommand)
    fields: dict[str, Any] = {
        "subcommand": subcommand,
        "output_dir": resolve_output_dir(args.output_dir),
        "plots": not args.no_plots,
        "input_path": getattr(args, "input", None),
    }
    if subcommand is Subcommand.SIMULATE:
        preset = Preset(args.preset)
        fields["preset"] = preset
        fields["seed"] = args.seed
        fields["snr_db"] = args.snr_db
        if preset is Preset.EQ10_NOISY and args.snr_db is None:
            fields["snr_db"] = DEFAULT_NOISY_SNR_DB
        overrides = {
            target: getattr(args, flag)
            for flag, target in BOLT_OVERRIDES.items()
            if getattr(args, flag) is not None
        }
        if args.fs is not None:
            overrides["fs"] = args.fs
        fields["overrides"] = overrides
    elif subcommand is Subcommand.DECOMPOSE:
        fields["vmd"] = _vmd_config(args)
    elif subcommand is Subcommand.MF_DECOMPOSE:
        fields["mf"] = _mf_config(args)
    elif subcommand is Subcommand.SPECTRUM:
        if args.mf:
            fields["mf"] = _mf_config(args)
        else:
            fields["vmd"] = _vmd_config(args)
        if args.split_hz is not None:
            fields["overrides"] = {"split_hz": args.split_hz}
    elif subcommand is Subcommand.ANALYZE:
        fields["analysis"] = BoltAnalysisConfig(
            velocity=args.velocity,
            blank_time=args.blank_time,
            min_ratio=args.min_ratio,
            mf=_mf_config(args),
        )
    else:
        fields["overrides"] = {"experiments": args.experiment, "seeds": args.seeds}
    return RunConfig(**fields)


def _simulate(cfg: RunConfig) -> list[str]:
    preset = cfg.preset or Preset.EQ10
    overrides = dict(cfg.overrides)
    if preset is Preset.BOLT:
        s = gen_bolt_echo(BoltEchoSpec(**overrides))
    else:
        unknown = sorted(set(overrides) - {"fs"})
        if unknown:
            raise ConfigurationError(f"Options {unknown} apply to the bolt preset only")
        s = gen_piecewise(PiecewiseToneSpec.two_tone(**overrides))
    if cfg.snr_db is not None:
        s = add_noise(s, cfg.snr_db, cfg.seed or 0)

    write_signal_csv(cfg.output_dir / "signal.csv", s)
    if cfg.plots:
        atomic_write_text(
            cfg.output_dir / "signal.svg",
            plot_signal(s, title=f"Synthetic record ({preset.value})"),
        )
    logger.info("cli.simulated", preset=preset.value, n=len(s), dt=s.dt)
    return cfg.artifact_names()


def _decompose(cfg: RunConfig, s: Signal) -> VMDResult:
    if cfg.mf is not None:
        return mf_vmd(s, cfg.mf)
    return vmd_decompose(s, cfg.vmd)


def _write_decomposition(cfg: RunConfig) -> list[str]:
    assert cfg.input_path is not None
    s = read_signal_csv(cfg.input_path)
    result = _decompose(cfg, s)
    for index, mode in enumerate(result.modes):
        write_signal_csv(cfg.output_dir / f"mode_{index}.csv", mode.u)
    write_signal_csv(cfg.output_dir / "residual.csv", result.residual)

    summary = result.summary()
    summary["diagnostics"] = dict(result.diagnostics)
    write_json(cfg.output_dir / "summary.json", summary)
    if cfg.plots:
        atomic_write_text(cfg.output_dir / "modes.svg", plot_modes(result.modes))
    return cfg.artifact_names()


def _write_spectrum(cfg: RunConfig) -> list[str]:
    assert cfg.input_path is not None
    s = read_signal_csv(cfg.input_path)
    result = _decompose(cfg, s)
    spectrum = hilbert_spectrum(result.modes)
    for index, series in enumerate(spectrum.series):
        write_spectrum_csv(cfg.output_dir / f"spectrum_mode_{index}.csv", series)

    payload: dict[str, Any] = {
        "omegas_hz": result.omegas.tolist(),
        "ridges": [
            {
                "mode_index": ridge.mode_index,
                "frequency_hz": ridge.frequency_hz,
                "mean_amplitude": ridge.mean_amplitude,
            }
            for ridge in spectrum.ridges()
        ],
        "negative_frequencies_clamped": [item.negative_clamped for item in spectrum.series],
        "gap_samples": [item.gap_count for item in spectrum.series],
    }
    split_hz = cfg.overrides.get("split_hz")
    if split_hz is not None:
        payload["transitions_s"] = detect_transitions(spectrum, float(split_hz))
    write_json(cfg.output_dir / "spectrum.json", payload)
    if cfg.plots:
        atomic_write_text(cfg.output_dir / "spectrum.svg", plot_spectrum(spectrum))
    return cfg.artifact_names()


def _analyze(cfg: RunConfig) -> list[str]:
    assert cfg.input_path is not None and cfg.analysis is not None
    s = read_signal_csv(cfg.input_path)
    result = mf_vmd(s, cfg.analysis.mf)
    report = bolt_report(s, result, cfg.analysis)
    write_json(cfg.output_dir / "report.json", report.model_dump(mode="json"))
    if cfg.plots:
        atomic_write_text(cfg.output_dir / "analysis.svg", plot_analysis(s, result.modes, report))
    return cfg.artifact_names()


def _reproduce(cfg: RunConfig) -> list[str]:
    report = run_experiments(cfg.overrides.get("experiments"), cfg.overrides.get("seeds"))
    write_json(cfg.output_dir / "reproduction.json", report.model_dump(mode="json", by_alias=True))
    if not report.all_passed:
        failed = [e.name for e in report.experiments if not e.passed]
        logger.warning("cli.experiments_failed", experiments=failed)
    return cfg.artifact_names()


HANDLERS: dict[Subcommand, Callable[[RunConfig], list[str]]] = {
    Subcommand.SIMULATE: _simulate,
    Subcommand.DECOMPOSE: _write_decomposition,
    Subcommand.MF_DECOMPOSE: _write_decomposition,
    Subcommand.SPECTRUM: _write_spectrum,
    Subcommand.ANALYZE: _analyze,
    Subcommand.REPRODUCE: _reproduce,
}


def _seeds(cfg: RunConfig) -> dict[str, int | None]:
    seeds: dict[str, int | None] = {}
    if cfg.subcommand is Subcommand.SIMULATE and cfg.snr_db is not None:
        seeds["noise"] = cfg.seed or 0
    vmd = cfg.vmd
    if cfg.mf is not None:
        vmd = cfg.mf.vmd
    elif cfg.analysis is not None:
        vmd = cfg.analysis.mf.vmd
    if vmd is not None and vmd.init is InitPolicy.RANDOM:
        seeds["vmd_init"] = vmd.seed
    return seeds


def _report_error(code: str, message: str) -> int:
    print(json.dumps({"error": code, "message": message}), file=sys.stderr)
    return EXIT_CONTRACT


def run(argv: Sequence[str] | None = None) -> int:
    """
    Execute one CLI invocation and return its exit code.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])
    """
    arguments = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(arguments)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(args.log_level, args.log_format)
    try:
        cfg = build_run_config(args)
        artifacts = HANDLERS[cfg.subcommand](cfg)
        provenance = Provenance(
            version=__version__,
            argv=arguments,
            subcommand=cfg.subcommand.value,
            config=cfg.model_dump(mode="json"),
            seeds=_seeds(cfg),
            artifacts=artifacts,
        )
        write_json(
            cfg.output_dir / "provenance.json",
            provenance.model_dump(mode="json", by_alias=True),
        )
    except ValidationError as e:
        return _report_error("E_CONFIG", _validation_message(e))
    except BoltscanError as e:
        return _report_error(e.code, str(e))
    except OSError as e:
        return _report_error("E_IO", str(e))

    logger.info("cli.completed", subcommand=cfg.subcommand.value, output_dir=str(cfg.output_dir))
    return EXIT_OK


def _validation_message(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in item['loc']) or 'config'}: {item['msg']}"
        for item in error.errors()
    )


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
