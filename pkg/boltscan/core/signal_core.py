"""
Foundational signal types and generic operations.

A ``Signal`` is an immutable, uniformly sampled real series. Every module in
the toolkit (morphological filtering, VMD, Hilbert analysis, echo picking)
consumes and produces ``Signal`` values, so a pipeline such as
filter -> decompose -> demodulate can be audited step by step.

Spectra are computed with full-length real FFTs (no zero padding), which keeps
spectral grids identical across modules.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import fft

from boltscan.errors import (
    InfiniteSNRError,
    InvalidSignalError,
    LengthMismatchError,
    UndefinedCorrelationError,
    ZeroPowerError,
)
from boltscan.utils.validators import validate_sample_interval, validate_samples

FloatArray = NDArray[np.float64]


def _frozen(array: FloatArray) -> FloatArray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Signal:
    """
    Uniformly sampled real-valued series.

    Attributes:
        samples: Sample values (arbitrary amplitude unit), read-only
        dt: Seconds per sample (> 0, finite)
        t0: Start time in seconds
    """

    samples: FloatArray
    dt: float
    t0: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", _frozen(validate_samples(self.samples)))
        object.__setattr__(self, "dt", validate_sample_interval(self.dt))
        t0 = float(self.t0)
        if not math.isfinite(t0):
            raise InvalidSignalError(f"Start time must be finite, got {t0}")
        object.__setattr__(self, "t0", t0)

    def __len__(self) -> int:
        return int(self.samples.size)

    def __repr__(self) -> str:
        return f"<Signal(n={len(self)}, dt={self.dt:g}, t0={self.t0:g})>"

    @property
    def fs(self) -> float:
        """Sampling rate in Hz."""
        return 1.0 / self.dt

    @property
    def nyquist(self) -> float:
        """Nyquist frequency in Hz."""
        return 0.5 / self.dt

    @property
    def duration(self) -> float:
        """Record length in seconds (N * dt)."""
        return len(self) * self.dt

    @property
    def times(self) -> FloatArray:
        """Sample instants in seconds."""
        return self.t0 + np.arange(len(self)) * self.dt

    def with_samples(self, samples: ArrayLike) -> Signal:
        """Return a new signal on the same time grid with different samples."""
        return Signal(np.asarray(samples, dtype=np.float64), self.dt, self.t0)

    def energy(self) -> float:
        """Sum of squared samples."""
        return float(np.dot(self.samples, self.samples))

    def power(self) -> float:
        """Mean squared sample value."""
        return self.energy() / len(self)

    def is_constant(self) -> bool:
        return bool(np.ptp(self.samples) == 0.0)


@dataclass(frozen=True, eq=False)
class ComplexSignal:
    """
    Complex series stored as separate real and imaginary parts.

    Holds analytic signals produced by the Hilbert module.
    """

    re: FloatArray
    im: FloatArray
    dt: float
    t0: float = 0.0

    def __post_init__(self) -> None:
        re = validate_samples(self.re, min_length=1, name="re")
        im = validate_samples(self.im, min_length=1, name="im")
        if re.size != im.size:
            raise LengthMismatchError(
                f"Real and imaginary parts differ in length: {re.size} != {im.size}"
            )
        object.__setattr__(self, "re", _frozen(re))
        object.__setattr__(self, "im", _frozen(im))
        object.__setattr__(self, "dt", validate_sample_interval(self.dt))
        object.__setattr__(self, "t0", float(self.t0))

    def __len__(self) -> int:
        return int(self.re.size)

    @classmethod
    def from_complex(cls, values: ArrayLike, dt: float, t0: float = 0.0) -> ComplexSignal:
        z = np.asarray(values, dtype=np.complex128)
        return cls(z.real.copy(), z.imag.copy(), dt, t0)

    @property
    def values(self) -> NDArray[np.complex128]:
        return self.re + 1j * self.im

    @property
    def amplitude(self) -> FloatArray:
        return np.hypot(self.re, self.im)

    @property
    def times(self) -> FloatArray:
        return self.t0 + np.arange(len(self)) * self.dt

    def real_part(self) -> Signal:
        return Signal(self.re.copy(), self.dt, self.t0)


@dataclass(frozen=True, eq=False)
class PowerSpectrum:
    """One-sided power spectrum on the grid k / (N * dt), k = 0..N//2."""

    freqs: FloatArray
    power: FloatArray
    n_samples: int = field(default=0)

    def as_array(self) -> FloatArray:
        """Return an (M, 2) array of (frequency Hz, power) rows."""
        return np.column_stack([self.freqs, self.power])

    def total(self) -> float:
        return float(np.sum(self.power))

    def peak_frequency(self) -> float:
        return float(self.freqs[int(np.argmax(self.power))])


def _require_same_length(a: Signal, b: Signal) -> None:
    if len(a) != len(b):
        raise LengthMismatchError(f"Signals differ in length: {len(a)} != {len(b)}")


def pearson_correlation(a: Signal, b: Signal) -> float:
    """
    Sample Pearson correlation coefficient between two aligned signals.

    A constant argument paired with a varying one has no linear relation and
    yields 0.0; two constant arguments raise ``UndefinedCorrelationError``.

    Raises:
        LengthMismatchError: If the signals differ in length
        UndefinedCorrelationError: If both signals are constant
    """
    _require_same_length(a, b)
    a_const, b_const = a.is_constant(), b.is_constant()
    if a_const and b_const:
        raise UndefinedCorrelationError("Correlation is undefined for two constant signals")
    if a_const or b_const:
        return 0.0

    ac = a.samples - a.samples.mean()
    bc = b.samples - b.samples.mean()
    denominator = math.sqrt(float(np.dot(ac, ac)) * float(np.dot(bc, bc)))
    if denominator == 0.0:
        return 0.0
    return float(np.clip(np.dot(ac, bc) / denominator, -1.0, 1.0))


def snr_db(clean: Signal, noisy: Signal) -> float:
    """
    Signal-to-noise ratio in decibels under the additive-noise convention.

    SNR = 10 * log10(power(clean) / power(noisy - clean)).

    Raises:
        LengthMismatchError: If the signals differ in length
        InfiniteSNRError: If noisy equals clean (zero noise power)
        ZeroPowerError: If the clean signal has zero power
    """
    _require_same_length(clean, noisy)
    noise = noisy.samples - clean.samples
    noise_power = float(np.mean(noise * noise))
    if noise_power == 0.0:
        raise InfiniteSNRError("Noise power is zero; SNR is infinite")
    clean_power = clean.power()
    if clean_power == 0.0:
        raise ZeroPowerError("Clean signal has zero power; SNR is undefined")
    return 10.0 * math.log10(clean_power / noise_power)


def power_spectrum(s: Signal) -> PowerSpectrum:
    """
    One-sided power spectrum whose bins sum to the time-domain energy.

    Interior bins are doubled to account for the folded negative frequencies;
    the DC bin and (for even N) the Nyquist bin are kept single.
    """
    n = len(s)
    coeffs = fft.rfft(s.samples)
    power = (np.abs(coeffs) ** 2) / n
    if n % 2 == 0:
        power[1:-1] *= 2.0
    else:
        power[1:] *= 2.0
    freqs = fft.rfftfreq(n, d=s.dt)
    return PowerSpectrum(freqs=_frozen(freqs), power=_frozen(power), n_samples=n)
