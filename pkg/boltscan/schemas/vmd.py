"""
Pydantic schemas for the variational mode decomposition solver.
"""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class InitPolicy(str, Enum):
    """Center-frequency initialization policies."""

    UNIFORM = "uniform"
    ZERO = "zero"
    RANDOM = "random"


class VMDConfig(BaseModel):
    """Solver hyperparameters for vmd_decompose."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    K: int = Field(default=2, ge=1, description="Number of modes")
    alpha: float = Field(default=2000.0, gt=0, description="Bandwidth penalty factor")
    tau: float = Field(default=0.1, ge=0, description="Dual-ascent step (0 disables exact closure)")
    tol: float = Field(default=1e-7, gt=0, description="Relative convergence tolerance")
    max_iters: int = Field(default=500, ge=1, description="Iteration cap")
    init: InitPolicy = Field(default=InitPolicy.UNIFORM, description="Omega initialization")
    seed: int | None = Field(default=None, ge=0, description="Seed for random initialization")

    @model_validator(mode="after")
    def validate_seed(self) -> "VMDConfig":
        """Random initialization must be reproducible."""
        if self.init is InitPolicy.RANDOM and self.seed is None:
            raise ValueError("init='random' requires an explicit seed")
        return self
