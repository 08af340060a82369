"""
Numeric validation utilities shared by the signal modules.
"""
import math
from typing import Any

import numpy as np
from numpy.typing import NDArray

from boltscan.errors import ConfigurationError, InvalidSignalError


def validate_sample_interval(dt: Any) -> float:
    """
    Validate and return a sampling interval in seconds.

    Args:
        dt: Sampling interval (int, float or numeric string)

    Returns:
        Validated interval as float

    Raises:
        InvalidSignalError: If the interval is not a finite positive number
    """
    try:
        value = float(dt)
    except (TypeError, ValueError) as e:
        raise InvalidSignalError(f"Invalid sample interval: {dt!r}") from e
    if not math.isfinite(value) or value <= 0.0:
        raise InvalidSignalError(f"Sample interval must be finite and > 0, got {value}")
    return value


def validate_samples(
    samples: Any, min_length: int = 2, name: str = "samples"
) -> NDArray[np.float64]:
    """
    Validate a one-dimensional series of finite real values.

    Args:
        samples: Array-like of real numbers
        min_length: Minimum number of samples
        name: Field name used in error messages

    Returns:
        A float64 copy of the samples

    Raises:
        InvalidSignalError: If the series is not 1-D, too short or non-finite
    """
    try:
        array = np.array(samples, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise InvalidSignalError(f"{name} must be real numbers") from e
    if array.ndim != 1:
        raise InvalidSignalError(f"{name} must be one-dimensional, got shape {array.shape}")
    if array.size < min_length:
        raise InvalidSignalError(f"{name} needs at least {min_length} values, got {array.size}")
    if not np.all(np.isfinite(array)):
        raise InvalidSignalError(f"{name} contains non-finite values")
    return array


def validate_positive(value: Any, name: str) -> float:
    """
    Validate a finite, strictly positive scalar.

    Raises:
        ConfigurationError: If the value is not finite or not > 0
    """
    try:
        number = float(value)
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"{name} must be a number, got {value!r}") from e
    if not math.isfinite(number) or number <= 0.0:
        raise ConfigurationError(f"{name} must be finite and > 0, got {number}")
    return number


def validate_open_unit_interval(value: Any, name: str) -> float:
    """
    Validate a scalar in the open interval (0, 1).

    Raises:
        ConfigurationError: If the value is outside (0, 1)
    """
    number = float(value)
    if not 0.0 < number < 1.0:
        raise ConfigurationError(f"{name} must lie in (0, 1), got {number}")
    return number
