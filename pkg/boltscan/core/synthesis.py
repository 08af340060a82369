"""
Synthetic test records.

- ``gen_piecewise``: piecewise-constant-frequency tones with global-time phase,
  e.g. 10 kHz / 20 kHz / 10 kHz switching at 0.8 ms and 1.2 ms.
- ``add_noise``: white Gaussian noise scaled to an exact target SNR.
- ``gen_bolt_echo``: direct wave plus bottom reflection of a grouted anchor.
"""
from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from boltscan.core.signal_core import Signal
from boltscan.errors import ConfigurationError, InfiniteSNRError, ZeroPowerError
from boltscan.schemas.synthesis import BoltEchoSpec, PiecewiseToneSpec
from boltscan.utils.logger import get_logger
from boltscan.utils.validators import validate_positive

logger = get_logger(__name__)


def gen_piecewise(spec: PiecewiseToneSpec) -> Signal:
    """
    Sample a piecewise tone at t = start + i / fs.

    Each instant belongs to the segment whose (start, end] interval holds it;
    the first segment also owns its start instant. The phase is referenced to
    absolute time, not reset per segment.
    """
    dt = 1.0 / spec.fs
    times = spec.start + np.arange(spec.n_samples) * dt
    ends = np.array([segment.end for segment in spec.segments])
    freqs = np.array([segment.frequency_hz for segment in spec.segments])
    amps = np.array([segment.amplitude for segment in spec.segments])

    index = np.clip(np.searchsorted(ends, times, side="left"), 0, len(spec.segments) - 1)
    samples = amps[index] * np.sin(2.0 * math.pi * freqs[index] * times)
    return Signal(samples, dt, spec.start)


def add_noise(s: Signal, snr_target_db: float, seed: int) -> Signal:
    """
    Add white Gaussian noise at an exact signal-to-noise ratio.

    The noise draw is rescaled so that power(s) / power(noise) equals the
    target, so the measured SNR matches it up to round-off.

    Raises:
        ZeroPowerError: If the input has zero power
        InfiniteSNRError: If the target is +inf (noise-free)
        ConfigurationError: If the target is NaN or -inf
    """
    if math.isinf(snr_target_db) and snr_target_db > 0:
        raise InfiniteSNRError("An infinite SNR target adds no noise; use the clean signal")
    if not math.isfinite(snr_target_db):
        raise ConfigurationError(f"SNR target must be finite, got {snr_target_db}")
    power = s.power()
    if power == 0.0:
        raise ZeroPowerError("Cannot set an SNR relative to a zero-power signal")

    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(len(s))
    noise_power = float(np.mean(noise * noise))
    target_power = power / (10.0 ** (snr_target_db / 10.0))
    noise *= math.sqrt(target_power / noise_power)

    logger.debug("synthesis.noise_added", snr_db=snr_target_db, seed=seed, n=len(s))
    return s.with_samples(s.samples + noise)


def gaussian_pulse(
    times: ArrayLike,
    center: float,
    frequency_hz: float,
    width: float,
    amplitude: float = 1.0,
) -> NDArray[np.float64]:
    """
    Gaussian-windowed cosine burst.

    amplitude * exp(-(t - center)^2 / (2 sigma^2)) * cos(2 pi f (t - center)),
    with sigma = width / 4 so the burst fits inside +/- width.
    """
    sigma = validate_positive(width, "width") / 4.0
    offset = np.asarray(times, dtype=np.float64) - center
    window = np.exp(-(offset**2) / (2.0 * sigma**2))
    return amplitude * window * np.cos(2.0 * math.pi * frequency_hz * offset)


def gen_bolt_echo(spec: BoltEchoSpec) -> Signal:
    """
    Synthetic bolt record: direct wave at t = 0 and echo at 2L/v.

    Each arrival is attenuated by exp(-t_arrival / decay_time); the echo is
    further scaled by ``echo_amplitude``.
    """
    dt = 1.0 / spec.fs
    times = np.arange(spec.n_samples) * dt
    echo_time = spec.echo_time
    if echo_time >= times[-1]:
        raise ConfigurationError(
            f"Echo at {echo_time * 1e3:.3f} ms is beyond the last sample "
            f"at {times[-1] * 1e3:.3f} ms"
        )

    direct = gaussian_pulse(times, 0.0, spec.pulse_frequency_hz, spec.pulse_width)
    samples = direct
    if spec.echo_amplitude > 0.0:
        gain = spec.echo_amplitude * math.exp(-echo_time / spec.decay_time)
        samples = samples + gaussian_pulse(
            times, echo_time, spec.pulse_frequency_hz, spec.pulse_width, gain
        )

    logger.debug(
        "synthesis.bolt_record",
        n=spec.n_samples,
        echo_time=echo_time,
        echo_amplitude=spec.echo_amplitude,
    )
    return Signal(samples, dt)


def tone_components(spec: PiecewiseToneSpec) -> dict[float, Signal]:
    """
    Split a piecewise tone into one reference signal per distinct frequency.

    Each reference keeps the segments at its frequency and is zero elsewhere,
    so the references sum to ``gen_piecewise(spec)``.
    """
    components: dict[float, Signal] = {}
    for frequency in sorted({segment.frequency_hz for segment in spec.segments}):
        masked = spec.model_copy(
            update={
                "segments": [
                    segment
                    if segment.frequency_hz == frequency
                    else segment.model_copy(update={"amplitude": 0.0})
                    for segment in spec.segments
                ]
            }
        )
        components[frequency] = gen_piecewise(masked)
    return components
