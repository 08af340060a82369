"""
Pydantic schemas for the MF-VMD pipeline and bolt-echo reports.
"""
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from boltscan.schemas.vmd import VMDConfig


class MfVmdConfig(BaseModel):
    """Morphological pre-filter plus VMD settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    se_width: int | None = Field(
        default=None, ge=1, description="Fixed flat SE width; None selects it by correlation sweep"
    )
    se_centered: bool = Field(default=False, description="Center the SE origin")
    se_min_width: int = Field(default=1, ge=1, description="Smallest width in the sweep")
    se_max_width: int = Field(default=9, ge=1, description="Largest width in the sweep")
    se_threshold: float = Field(
        default=0.95, gt=0, lt=1, description="Input/output correlation required by the sweep"
    )
    vmd: VMDConfig = Field(default_factory=lambda: VMDConfig(K=5))

    @model_validator(mode="after")
    def validate_width_range(self) -> "MfVmdConfig":
        if self.se_min_width > self.se_max_width:
            raise ValueError(
                f"se_min_width ({self.se_min_width}) exceeds se_max_width ({self.se_max_width})"
            )
        return self

    @property
    def se_widths(self) -> range:
        return range(self.se_min_width, self.se_max_width + 1)


class BoltAnalysisConfig(BaseModel):
    """Echo picking and length estimation settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    velocity: float = Field(default=6000.0, gt=0, description="Wave velocity in the bolt, m/s")
    blank_time: float = Field(default=0.3e-3, gt=0, description="Masked direct-wave interval, s")
    min_ratio: float = Field(default=3.0, ge=1, description="Required peak-to-median ratio")
    min_relative_peak: float = Field(
        default=0.01, ge=0, lt=1, description="Peak floor relative to the strongest mode envelope"
    )
    mf: MfVmdConfig = Field(default_factory=lambda: MfVmdConfig(vmd=VMDConfig(K=3)))


class BoltReport(BaseModel):
    """Result of analyzing one bolt record."""

    model_config = ConfigDict(frozen=True)

    echo_time: float = Field(..., gt=0, description="Bottom-reflection time in seconds")
    estimated_length: float = Field(..., gt=0, description="Anchor length in meters")
    carrier_mode_index: int = Field(..., ge=0, description="Mode carrying the reflection")
    confidence: float = Field(..., ge=0, description="Peak-to-median envelope ratio")
    velocity: float = Field(..., gt=0, description="Velocity used for the estimate, m/s")
    record_duration: float = Field(..., gt=0, description="Analyzed record length in seconds")
    se_width: int = Field(..., ge=1, description="Structuring element width used")
    mode_omegas_hz: list[float] = Field(default_factory=list)
    diagnostics: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_echo_in_record(self) -> "BoltReport":
        if self.echo_time > self.record_duration:
            raise ValueError(
                f"Echo time {self.echo_time} s lies beyond the {self.record_duration} s record"
            )
        return self
