"""
Pydantic schemas for CLI runs, provenance records and experiment reports.
"""
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from boltscan.schemas.analysis import BoltAnalysisConfig, MfVmdConfig
from boltscan.schemas.vmd import VMDConfig

SCHEMA_VERSION = 1


class Subcommand(str, Enum):
    SIMULATE = "simulate"
    DECOMPOSE = "decompose"
    MF_DECOMPOSE = "mf-decompose"
    SPECTRUM = "spectrum"
    ANALYZE = "analyze"
    REPRODUCE = "reproduce"


class Preset(str, Enum):
    EQ10 = "eq10"
    EQ10_NOISY = "eq10-noisy"
    BOLT = "bolt"


class RunConfig(BaseModel):
    """Fully validated description of one CLI invocation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    subcommand: Subcommand
    input_path: Path | None = Field(default=None, description="Signal CSV to read")
    output_dir: Path = Field(..., description="Directory receiving all artifacts")
    plots: bool = Field(default=True, description="Emit SVG figures")
    preset: Preset | None = None
    seed: int | None = Field(default=None, ge=0)
    snr_db: float | None = None
    vmd: VMDConfig | None = None
    mf: MfVmdConfig | None = None
    analysis: BoltAnalysisConfig | None = None
    overrides: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_paths(self) -> "RunConfig":
        needs_input = self.subcommand not in (Subcommand.SIMULATE, Subcommand.REPRODUCE)
        if needs_input and self.input_path is None:
            raise ValueError(f"'{self.subcommand.value}' requires an input signal")
        if self.input_path is not None:
            source = self.input_path.resolve()
            if source == self.output_dir.resolve():
                raise ValueError("Input path and output directory must differ")
            if source in {self.output_dir.resolve() / name for name in self.artifact_names()}:
                raise ValueError(f"Input {self.input_path} would be overwritten by an artifact")
        return self

    def modes(self) -> int:
        if self.subcommand is Subcommand.ANALYZE and self.analysis is not None:
            return self.analysis.mf.vmd.K
        if self.mf is not None:
            return self.mf.vmd.K
        if self.vmd is not None:
            return self.vmd.K
        return 0

    def artifact_names(self) -> list[str]:
        """File names this run writes inside ``output_dir``."""
        names = ["provenance.json"]
        if self.subcommand is Subcommand.SIMULATE:
            names += ["signal.csv"] + (["signal.svg"] if self.plots else [])
        elif self.subcommand in (Subcommand.DECOMPOSE, Subcommand.MF_DECOMPOSE):
            names += [f"mode_{k}.csv" for k in range(self.modes())]
            names += ["residual.csv", "summary.json"] + (["modes.svg"] if self.plots else [])
        elif self.subcommand is Subcommand.SPECTRUM:
            names += [f"spectrum_mode_{k}.csv" for k in range(self.modes())]
            names += ["spectrum.json"] + (["spectrum.svg"] if self.plots else [])
        elif self.subcommand is Subcommand.ANALYZE:
            names += ["report.json"] + (["analysis.svg"] if self.plots else [])
        else:
            names += ["reproduction.json"]
        return names


class Provenance(BaseModel):
    """Everything needed to repeat a run."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    tool: str = "boltscan"
    version: str
    argv: list[str]
    subcommand: str
    config: dict[str, Any]
    seeds: dict[str, int | None] = Field(default_factory=dict)
    artifacts: list[str] = Field(default_factory=list)


class ExperimentResult(BaseModel):
    """Outcome of one reproduction experiment."""

    name: str
    criterion: str
    passed: bool
    pass_fraction: float | None = Field(default=None, ge=0, le=1)
    metrics: dict[str, Any] = Field(default_factory=dict)


class ReproductionReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    version: str
    experiments: list[ExperimentResult] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(experiment.passed for experiment in self.experiments)
