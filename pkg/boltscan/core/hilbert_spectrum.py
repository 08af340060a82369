"""
Hilbert analysis of decomposed modes.

The analytic signal of a real mode u(t) is u(t) + j H[u](t), built from the
one-sided spectrum (negative bins zeroed, positive bins doubled, DC and
Nyquist kept). Its modulus is the instantaneous amplitude and the time
derivative of its unwrapped phase, divided by 2 pi, is the instantaneous
frequency. Stacking these series for every mode gives the Hilbert
time-frequency spectrum.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy import ndimage, signal

from boltscan.core.signal_core import ComplexSignal, Signal
from boltscan.core.vmd_solver import Mode
from boltscan.errors import ConfigurationError, InvalidSignalError, LengthMismatchError
from boltscan.utils.logger import get_logger

logger = get_logger(__name__)

FloatArray = NDArray[np.float64]

MIN_ANALYTIC_LENGTH = 4
DEFAULT_FREQUENCY_BINS = 256
# amplitude below this fraction of the series maximum leaves the phase undefined
_GAP_FRACTION = 1e-12


@dataclass(frozen=True, eq=False)
class InstFreqSeries:
    """
    Instantaneous frequency and amplitude of one analytic signal.

    Attributes:
        freqs: Frequency in Hz per sample, clamped to [0, Nyquist]; NaN inside gaps
        amps: Instantaneous amplitude per sample
        dt: Seconds per sample
        t0: Start time in seconds
        valid: False where the frequency is undefined (amplitude gap)
        negative_clamped: Number of raw negative frequencies clamped to 0
    """

    freqs: FloatArray
    amps: FloatArray
    dt: float
    t0: float = 0.0
    valid: NDArray[np.bool_] = field(default_factory=lambda: np.zeros(0, dtype=bool))
    negative_clamped: int = 0

    def __len__(self) -> int:
        return int(self.amps.size)

    @property
    def times(self) -> FloatArray:
        return self.t0 + np.arange(len(self)) * self.dt

    @property
    def nyquist(self) -> float:
        return 0.5 / self.dt

    @property
    def is_empty(self) -> bool:
        """True when no sample carries a defined frequency."""
        return not bool(np.any(self.valid))

    @property
    def gap_count(self) -> int:
        return int(np.count_nonzero(~self.valid))

    def mean_amplitude(self) -> float:
        return float(np.mean(self.amps)) if len(self) else 0.0

    def ridge_frequency(self) -> float:
        """Amplitude-weighted median frequency over the valid samples (NaN if empty)."""
        if self.is_empty:
            return math.nan
        freqs = self.freqs[self.valid]
        weights = self.amps[self.valid]
        order = np.argsort(freqs, kind="stable")
        cumulative = np.cumsum(weights[order])
        index = int(np.searchsorted(cumulative, cumulative[-1] / 2.0))
        return float(freqs[order][min(index, freqs.size - 1)])


@dataclass(frozen=True)
class Ridge:
    """Dominant frequency of one mode in the Hilbert spectrum."""

    mode_index: int
    frequency_hz: float
    mean_amplitude: float


@dataclass(frozen=True, eq=False)
class HilbertSpectrum:
    """
    Per-mode instantaneous frequency/amplitude series on a shared time grid.
    """

    series: tuple[InstFreqSeries, ...]
    times: FloatArray

    def __len__(self) -> int:
        return len(self.series)

    @property
    def nyquist(self) -> float:
        return self.series[0].nyquist

    def intensity(
        self, n_bins: int = DEFAULT_FREQUENCY_BINS
    ) -> tuple[FloatArray, FloatArray]:
        """
        Amplitude-weighted time-frequency image.

        Args:
            n_bins: Number of frequency bins from 0 to Nyquist

        Returns:
            (image of shape (n_bins, n_times), bin edges in Hz)
        """
        if n_bins < 1:
            raise ConfigurationError(f"n_bins must be >= 1, got {n_bins}")
        edges = np.linspace(0.0, self.nyquist, n_bins + 1)
        image = np.zeros((n_bins, self.times.size))
        columns = np.arange(self.times.size)
        for item in self.series:
            valid = item.valid
            rows = np.floor(item.freqs[valid] / self.nyquist * n_bins).astype(int)
            np.add.at(image, (np.clip(rows, 0, n_bins - 1), columns[valid]), item.amps[valid])
        return image, edges

    def ridges(self) -> list[Ridge]:
        """Per-mode ridge frequencies ranked by mean amplitude, strongest first."""
        found = [
            Ridge(index, item.ridge_frequency(), item.mean_amplitude())
            for index, item in enumerate(self.series)
            if not item.is_empty
        ]
        return sorted(found, key=lambda ridge: ridge.mean_amplitude, reverse=True)

    def dominant_track(self) -> FloatArray:
        """Frequency of the strongest mode at every instant (NaN where all modes are gaps)."""
        amps = np.vstack([np.where(item.valid, item.amps, -np.inf) for item in self.series])
        freqs = np.vstack([item.freqs for item in self.series])
        strongest = np.argmax(amps, axis=0)
        columns = np.arange(self.times.size)
        track = freqs[strongest, columns]
        track[~np.isfinite(amps[strongest, columns])] = np.nan
        return track


def analytic_signal(s: Signal) -> ComplexSignal:
    """
    Analytic signal by one-sided spectrum construction.

    The real part reproduces the input and all strictly negative frequency
    bins of the result are zero.

    Raises:
        InvalidSignalError: If the signal has fewer than 4 samples
    """
    if len(s) < MIN_ANALYTIC_LENGTH:
        raise InvalidSignalError(
            f"Analytic signal needs at least {MIN_ANALYTIC_LENGTH} samples, got {len(s)}"
        )
    return ComplexSignal.from_complex(signal.hilbert(s.samples), s.dt, s.t0)


def envelope(s: Signal, pad: int | None = None) -> FloatArray:
    """
    Instantaneous amplitude of a reflect-extended record.

    Args:
        s: Input signal
        pad: Samples mirrored on each side; defaults to half the length

    Returns:
        Envelope on the input time grid
    """
    n = len(s)
    width = min(n - 1, n // 2 if pad is None else pad)
    if width <= 0:
        return analytic_signal(s).amplitude
    extended = np.pad(s.samples, width, mode="reflect")
    return np.abs(signal.hilbert(extended))[width : width + n]


def instantaneous_frequency(a: ComplexSignal) -> InstFreqSeries:
    """
    Instantaneous frequency from the unwrapped phase.

    Central differences in the interior and one-sided differences at the
    endpoints. Samples whose amplitude vanishes (and their neighbours, whose
    differences touch them) are reported as gaps with NaN frequency. Raw
    negative frequencies are clamped to 0 and counted.
    """
    amps = a.amplitude
    peak = float(np.max(amps)) if amps.size else 0.0
    defined = amps > _GAP_FRACTION * peak if peak > 0.0 else np.zeros(amps.size, dtype=bool)
    valid = ~ndimage.binary_dilation(~defined) if amps.size > 1 else defined

    if amps.size > 1:
        phase = np.unwrap(np.angle(a.values))
        raw = np.gradient(phase, a.dt) / (2.0 * math.pi)
    else:
        raw = np.zeros(amps.size)

    negative = valid & (raw < 0.0)
    negative_count = int(np.count_nonzero(negative))
    if negative_count:
        logger.warning("hilbert.negative_frequency_clamped", samples=negative_count)

    freqs = np.clip(raw, 0.0, 0.5 / a.dt)
    freqs[~valid] = np.nan
    return InstFreqSeries(
        freqs=freqs,
        amps=amps,
        dt=a.dt,
        t0=a.t0,
        valid=valid,
        negative_clamped=negative_count,
    )


def hilbert_spectrum(modes: Sequence[Mode]) -> HilbertSpectrum:
    """
    Instantaneous frequency/amplitude of every mode on the shared time grid.

    Raises:
        ConfigurationError: If no modes are given
        LengthMismatchError: If modes differ in length or sampling
    """
    if not modes:
        raise ConfigurationError("Hilbert spectrum needs at least one mode")
    reference = modes[0].u
    for mode in modes[1:]:
        if len(mode.u) != len(reference) or mode.u.dt != reference.dt:
            raise LengthMismatchError("Modes must share length and sample interval")

    series = tuple(instantaneous_frequency(analytic_signal(mode.u)) for mode in modes)
    empty = [index for index, item in enumerate(series) if item.is_empty]
    if empty:
        logger.warning("hilbert.empty_modes", modes=empty)
    return HilbertSpectrum(series=series, times=reference.times)


def detect_transitions(
    spectrum: HilbertSpectrum, split_hz: float, smoothing: int = 21
) -> list[float]:
    """
    Times at which the dominant-mode frequency crosses ``split_hz``.

    The strongest mode's frequency track is classified against ``split_hz``
    (gaps carry the previous regime), median-filtered over ``smoothing``
    samples, and every regime change is reported at the first sample of the
    new regime. Changes within half a filter length of either record end are
    edge artifacts of the analytic signal and are dropped.

    Args:
        spectrum: Hilbert spectrum of the decomposed record
        split_hz: Frequency separating the two regimes
        smoothing: Median-filter length in samples (odd, >= 1)

    Returns:
        Transition times in seconds, ascending
    """
    if smoothing < 1 or smoothing % 2 == 0:
        raise ConfigurationError(f"smoothing must be an odd positive length, got {smoothing}")
    track = spectrum.dominant_track()
    finite = np.isfinite(track)
    if not np.any(finite):
        return []

    # carry the last defined regime through gaps
    index = np.where(finite, np.arange(track.size), 0)
    np.maximum.accumulate(index, out=index)
    first = int(np.argmax(finite))
    index[:first] = first
    regime = (track[index] > split_hz).astype(np.float64)

    regime = ndimage.median_filter(regime, size=smoothing, mode="mirror")
    changes = np.flatnonzero(np.diff(regime) != 0.0) + 1
    half = smoothing // 2
    changes = changes[(changes > half) & (changes < track.size - half)]
    return [float(spectrum.times[i]) for i in changes]
