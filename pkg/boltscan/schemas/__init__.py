"""Pydantic schemas package."""
from .analysis import BoltAnalysisConfig, BoltReport, MfVmdConfig
from .run import (
    SCHEMA_VERSION,
    ExperimentResult,
    Preset,
    Provenance,
    ReproductionReport,
    RunConfig,
    Subcommand,
)
from .synthesis import BoltEchoSpec, PiecewiseToneSpec, ToneSegment
from .vmd import InitPolicy, VMDConfig

__all__ = [
    # Solver schemas
    "InitPolicy",
    "VMDConfig",
    # Synthesis schemas
    "BoltEchoSpec",
    "PiecewiseToneSpec",
    "ToneSegment",
    # Analysis schemas
    "BoltAnalysisConfig",
    "BoltReport",
    "MfVmdConfig",
    # Run schemas
    "SCHEMA_VERSION",
    "ExperimentResult",
    "Preset",
    "Provenance",
    "ReproductionReport",
    "RunConfig",
    "Subcommand",
]
