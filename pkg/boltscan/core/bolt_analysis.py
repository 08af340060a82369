"""
MF-VMD pipeline and bolt bottom-reflection analysis.

MF-VMD applies the combined morphological filter before variational mode
decomposition. The echo picker then searches every mode's Hilbert envelope
after a blank time that masks the direct wave, keeping the mode whose
strongest peak stands out most against the envelope median. The anchor
length follows from the two-way travel time: L = v * t / 2.
"""
from __future__ import annotations

import asyncio
import dataclasses
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from boltscan.core.hilbert_spectrum import envelope
from boltscan.core.morphology import (
    StructuringElement,
    filter_correlation,
    mmc_filter,
    select_se_width,
)
from boltscan.core.signal_core import Signal
from boltscan.core.vmd_solver import VMDResult, vmd_decompose
from boltscan.errors import BoltscanError, ConfigurationError, NoEchoFoundError
from boltscan.schemas.analysis import BoltAnalysisConfig, BoltReport, MfVmdConfig
from boltscan.utils.logger import get_logger
from boltscan.utils.validators import validate_positive

logger = get_logger(__name__)

DEFAULT_MIN_RATIO = 3.0
DEFAULT_MIN_RELATIVE_PEAK = 0.01
RECORD_TIMEOUT_SECONDS = 30.0


@dataclass(frozen=True)
class EchoPick:
    """
    Selected bottom reflection.

    Attributes:
        mode_index: Mode carrying the reflection
        echo_time: Reflection time in seconds from the record start
        confidence: Peak-to-median envelope ratio
        peak: Envelope value at the pick
    """

    mode_index: int
    echo_time: float
    confidence: float
    peak: float


def mf_vmd(s: Signal, cfg: MfVmdConfig | None = None) -> VMDResult:
    """
    Morphological combined filtering followed by VMD.

    The SE is the fixed ``cfg.se_width`` when given, otherwise the width
    chosen by the correlation sweep. The result equals
    ``vmd_decompose(mmc_filter(s, se), cfg.vmd)`` with the SE width, sweep
    outcome and filter fidelity added to its diagnostics; its residual is
    taken against the filtered signal.
    """
    cfg = cfg or MfVmdConfig()
    diagnostics: dict[str, object] = {}
    if cfg.se_width is not None:
        width = cfg.se_width
    else:
        widths = [w for w in cfg.se_widths if w <= len(s)]
        if not widths:
            raise ConfigurationError(
                f"No structuring element width in {cfg.se_min_width}..{cfg.se_max_width} "
                f"fits a signal of length {len(s)}"
            )
        selection = select_se_width(s, widths, cfg.se_threshold)
        width = selection.width
        diagnostics["se_flagged"] = selection.flagged
        diagnostics["se_correlations"] = selection.correlations

    filtered = mmc_filter(s, StructuringElement.flat(width, centered=cfg.se_centered))
    result = vmd_decompose(filtered, cfg.vmd)

    diagnostics["se_width"] = width
    diagnostics["filter_correlation"] = filter_correlation(s, filtered)
    logger.debug("bolt.mf_vmd", se_width=width, K=cfg.vmd.K, converged=result.converged)
    return dataclasses.replace(result, diagnostics={**result.diagnostics, **diagnostics})


def detect_echo(
    result: VMDResult,
    blank_time: float,
    min_ratio: float = DEFAULT_MIN_RATIO,
    min_relative_peak: float = DEFAULT_MIN_RELATIVE_PEAK,
) -> EchoPick:
    """
    Locate the bottom reflection among the decomposed modes.

    For each mode the envelope after ``blank_time`` is searched for its
    highest interior local maximum. A candidate qualifies when it is at least
    ``min_ratio`` times the envelope median after the blank time and at least
    ``min_relative_peak`` of the largest envelope value of any mode. The
    qualifying candidate with the greatest ratio wins.

    Raises:
        ConfigurationError: If ``blank_time`` is not inside the record
        NoEchoFoundError: If no mode has a qualifying peak
    """
    if not result.modes:
        raise NoEchoFoundError("Decomposition has no modes to search")
    reference = result.modes[0].u
    if not 0.0 < blank_time < reference.duration:
        raise ConfigurationError(
            f"Blank time {blank_time} s must lie inside the {reference.duration} s record"
        )

    offsets = reference.times - reference.t0
    after = offsets > blank_time
    envelopes = [envelope(mode.u) for mode in result.modes]
    global_peak = max(float(np.max(env)) for env in envelopes)
    if global_peak == 0.0:
        raise NoEchoFoundError("All modes are zero")

    best: EchoPick | None = None
    for index, env in enumerate(envelopes):
        tail = env[after]
        peaks, _ = find_peaks(tail)
        if peaks.size == 0:
            continue
        top = int(peaks[np.argmax(tail[peaks])])
        peak = float(tail[top])
        median = max(float(np.median(tail)), 1e-12 * global_peak)
        ratio = peak / median
        if peak < min_relative_peak * global_peak or ratio < min_ratio:
            continue
        if best is None or ratio > best.confidence:
            best = EchoPick(index, float(offsets[after][top]), ratio, peak)

    if best is None:
        raise NoEchoFoundError(
            f"No envelope peak after {blank_time * 1e3:.3f} ms exceeds {min_ratio}x the median"
        )
    logger.debug(
        "bolt.echo_detected",
        mode_index=best.mode_index,
        echo_time=best.echo_time,
        confidence=round(best.confidence, 3),
    )
    return best


def estimate_length(echo_time: float, velocity: float) -> float:
    """
    Anchor length from the two-way travel time: L = v * t / 2.

    Raises:
        ConfigurationError: If either argument is not finite and positive
    """
    return validate_positive(velocity, "velocity") * validate_positive(echo_time, "echo_time") / 2.0


def analyze_record(s: Signal, cfg: BoltAnalysisConfig | None = None) -> BoltReport:
    """
    Full bolt analysis: MF-VMD, echo pick and length estimate.

    Raises:
        NoEchoFoundError: If no reflection stands out after the blank time
    """
    cfg = cfg or BoltAnalysisConfig()
    return bolt_report(s, mf_vmd(s, cfg.mf), cfg)


def bolt_report(s: Signal, result: VMDResult, cfg: BoltAnalysisConfig) -> BoltReport:
    """
    Pick the echo in an MF-VMD result of ``s`` and estimate the anchor length.

    Raises:
        NoEchoFoundError: If no reflection stands out after the blank time
    """
    pick = detect_echo(result, cfg.blank_time, cfg.min_ratio, cfg.min_relative_peak)
    length = estimate_length(pick.echo_time, cfg.velocity)
    logger.info(
        "bolt.analyzed",
        echo_time=pick.echo_time,
        estimated_length=length,
        mode_index=pick.mode_index,
    )
    return BoltReport(
        echo_time=pick.echo_time,
        estimated_length=length,
        carrier_mode_index=pick.mode_index,
        confidence=pick.confidence,
        velocity=cfg.velocity,
        record_duration=s.duration,
        se_width=int(result.diagnostics.get("se_width", 1)),
        mode_omegas_hz=[float(w) for w in result.omegas],
        diagnostics={
            "iterations": result.iterations,
            "converged": result.converged,
            "se_flagged": bool(result.diagnostics.get("se_flagged", False)),
            "filter_correlation": float(result.diagnostics.get("filter_correlation", 1.0)),
            "echo_peak": pick.peak,
        },
    )


@dataclass
class BatchOutcome:
    """Reports of a batch run; failed records map to their error code."""

    reports: dict[str, BoltReport] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)


class BoltAnalyzer:
    """
    Bolt record analyzer with concurrent batch execution.

    Records are analyzed in worker threads with per-record timeout
    protection. Batch execution is fail-open: a record that raises or times
    out is logged and reported in ``failures`` without affecting the others.
    """

    def __init__(
        self,
        config: BoltAnalysisConfig | None = None,
        timeout_seconds: float = RECORD_TIMEOUT_SECONDS,
    ) -> None:
        self.config = config or BoltAnalysisConfig()
        self.timeout_seconds = validate_positive(timeout_seconds, "timeout_seconds")

    def analyze(self, s: Signal) -> BoltReport:
        return analyze_record(s, self.config)

    async def analyze_batch(self, records: Mapping[str, Signal]) -> BatchOutcome:
        """
        Analyze named records concurrently.

        A timeout stops waiting for a record but cannot interrupt its worker
        thread; the thread runs to completion and its result is discarded.

        Args:
            records: Record name to signal

        Returns:
            BatchOutcome with one entry per record in either ``reports`` or ``failures``
        """
        names = list(records)
        tasks = [
            asyncio.wait_for(
                asyncio.to_thread(self.analyze, records[name]),
                timeout=self.timeout_seconds,
            )
            for name in names
        ]
        results = await asyncio.gather(*tasks, return_exceptions=True)

        outcome = BatchOutcome()
        for name, result in zip(names, results):
            if isinstance(result, asyncio.TimeoutError):
                logger.warning(
                    "bolt.record_timeout",
                    record=name,
                    timeout_seconds=self.timeout_seconds,
                    worker_still_running=True,
                )
                outcome.failures[name] = "E_TIMEOUT"
            elif isinstance(result, BoltscanError):
                logger.warning("bolt.record_failed", record=name, error_code=result.code)
                outcome.failures[name] = result.code
            elif isinstance(result, BaseException):
                logger.error(
                    "bolt.record_error",
                    record=name,
                    error_type=type(result).__name__,
                    error=str(result),
                )
                outcome.failures[name] = "E_INTERNAL"
            else:
                outcome.reports[name] = result

        logger.info(
            "bolt.batch_complete", analyzed=len(outcome.reports), failed=len(outcome.failures)
        )
        return outcome
