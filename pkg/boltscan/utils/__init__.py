"""Utility modules for boltscan."""
from .logger import get_logger, setup_logging
from .validators import (
    validate_open_unit_interval,
    validate_positive,
    validate_sample_interval,
    validate_samples,
)

__all__ = [
    "get_logger",
    "setup_logging",
    "validate_open_unit_interval",
    "validate_positive",
    "validate_sample_interval",
    "validate_samples",
]
