"""
Pydantic schemas describing synthetic test records.
"""
import math

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# contiguity tolerance on segment boundaries, seconds
_BOUNDARY_TOL = 1e-12


class ToneSegment(BaseModel):
    """One branch of a piecewise tone: amplitude * sin(2*pi*f*t) on (start, end]."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    start: float = Field(..., ge=0, description="Segment start time in seconds")
    end: float = Field(..., gt=0, description="Segment end time in seconds")
    frequency_hz: float = Field(..., ge=0, description="Tone frequency in Hz")
    amplitude: float = Field(default=1.0, ge=0, description="Peak amplitude")

    @model_validator(mode="after")
    def validate_order(self) -> "ToneSegment":
        if self.end <= self.start:
            raise ValueError(f"Segment end {self.end} must be after start {self.start}")
        return self


class PiecewiseToneSpec(BaseModel):
    """Contiguous sequence of tone segments sampled at ``fs``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    segments: list[ToneSegment] = Field(..., min_length=1)
    fs: float = Field(default=1e6, gt=0, description="Sampling rate in Hz")

    @model_validator(mode="after")
    def validate_segments(self) -> "PiecewiseToneSpec":
        for prev, nxt in zip(self.segments, self.segments[1:]):
            if abs(nxt.start - prev.end) > _BOUNDARY_TOL:
                kind = "gap" if nxt.start > prev.end else "overlap"
                raise ValueError(f"Segment {kind} between {prev.end} s and {nxt.start} s")
        for segment in self.segments:
            if segment.frequency_hz >= self.fs / 2:
                raise ValueError(
                    f"Frequency {segment.frequency_hz} Hz is not below Nyquist {self.fs / 2} Hz"
                )
        return self

    @property
    def start(self) -> float:
        return self.segments[0].start

    @property
    def end(self) -> float:
        return self.segments[-1].end

    @property
    def n_samples(self) -> int:
        return int(round((self.end - self.start) * self.fs))

    @classmethod
    def two_tone(cls, fs: float = 1e6) -> "PiecewiseToneSpec":
        """10 kHz / 20 kHz / 10 kHz record with regime changes at 0.8 ms and 1.2 ms."""
        return cls(
            segments=[
                ToneSegment(start=0.0, end=0.8e-3, frequency_hz=10e3),
                ToneSegment(start=0.8e-3, end=1.2e-3, frequency_hz=20e3),
                ToneSegment(start=1.2e-3, end=2.0e-3, frequency_hz=10e3),
            ],
            fs=fs,
        )


class BoltEchoSpec(BaseModel):
    """Geometry and excitation of a synthetic bolt-anchoring record."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    bolt_length: float = Field(default=3.0, gt=0, description="Anchor length in meters")
    wave_velocity: float = Field(default=6000.0, gt=0, description="Wave speed in the bolt, m/s")
    pulse_frequency_hz: float = Field(default=20e3, gt=0, description="Pulse center frequency")
    pulse_width: float = Field(
        default=0.2e-3, gt=0, description="Pulse half-duration in seconds (sigma = width/4)"
    )
    echo_amplitude: float = Field(
        default=0.5, ge=0, le=1, description="Echo amplitude relative to the direct wave"
    )
    decay_time: float = Field(default=5e-3, gt=0, description="Attenuation time constant, s")
    record_length: float = Field(default=3.92e-3, gt=0, description="Record length in seconds")
    fs: float = Field(default=250e3, gt=0, description="Sampling rate in Hz")

    @field_validator("pulse_frequency_hz")
    @classmethod
    def validate_frequency(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("Pulse frequency must be finite")
        return v

    @model_validator(mode="after")
    def validate_geometry(self) -> "BoltEchoSpec":
        if self.pulse_frequency_hz >= self.fs / 2:
            raise ValueError("Pulse frequency must be below Nyquist")
        if self.echo_time >= self.record_length:
            raise ValueError(
                f"Echo at {self.echo_time * 1e3:.3f} ms falls beyond the "
                f"{self.record_length * 1e3:.3f} ms record"
            )
        return self

    @property
    def echo_time(self) -> float:
        """Two-way travel time 2L/v in seconds."""
        return 2.0 * self.bolt_length / self.wave_velocity

    @property
    def n_samples(self) -> int:
        return int(round(self.record_length * self.fs))
