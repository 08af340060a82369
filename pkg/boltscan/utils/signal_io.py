"""
Artifact I/O: signal CSV files, spectrum tables and JSON documents.

Signal CSV layout::

    # dt=<seconds> t0=<seconds>
    <sample 0>
    <sample 1>
    ...

Samples are written with 17 significant digits so a write/read round trip is
bit-exact. Every artifact is written atomically (temporary file in the target
directory, then rename).
"""
from __future__ import annotations

import io
import json
import math
import os
import re
import tempfile
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from boltscan.core.hilbert_spectrum import InstFreqSeries
from boltscan.core.signal_core import Signal
from boltscan.errors import InputFileError, SignalFormatError
from boltscan.utils.logger import get_logger

logger = get_logger(__name__)

_HEADER = re.compile(r"^#\s*dt=(?P<dt>\S+)\s+t0=(?P<t0>\S+)\s*$")
SPECTRUM_COLUMNS = ["time_s", "freq_hz", "amplitude"]


def atomic_write_text(path: Path, text: str) -> Path:
    """Write ``text`` to ``path`` through a temporary file and an atomic rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.debug("io.written", path=str(path), bytes=len(text))
    return path


def format_signal_csv(s: Signal) -> str:
    lines = [f"# dt={s.dt!r} t0={s.t0!r}"]
    lines.extend(f"{value:.17g}" for value in s.samples)
    return "\n".join(lines) + "\n"


def write_signal_csv(path: Path, s: Signal) -> Path:
    """Write a signal CSV (header line plus one sample per line)."""
    return atomic_write_text(path, format_signal_csv(s))


def read_signal_csv(path: Path) -> Signal:
    """
    Read a signal CSV.

    Raises:
        InputFileError: If the file does not exist
        SignalFormatError: If the header or any sample is malformed or non-finite
    """
    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Signal file not found: {path}")
    text = path.read_text(encoding="utf-8")
    first, _, _ = text.partition("\n")
    match = _HEADER.match(first.strip())
    if match is None:
        raise SignalFormatError(f"{path}: first line must be '# dt=<s> t0=<s>'")
    if not any(line.strip() and not line.lstrip().startswith("#") for line in text.splitlines()):
        raise SignalFormatError(f"{path}: no samples")
    try:
        dt = float(match["dt"])
        t0 = float(match["t0"])
        samples = np.loadtxt(io.StringIO(text), comments="#", dtype=np.float64, ndmin=1)
    except ValueError as e:
        raise SignalFormatError(f"{path}: {e}") from e
    if samples.ndim != 1 or samples.size == 0:
        raise SignalFormatError(f"{path}: expected one sample per line")
    if not (math.isfinite(dt) and math.isfinite(t0)) or not np.all(np.isfinite(samples)):
        raise SignalFormatError(f"{path}: non-finite values are not allowed")
    return Signal(samples, dt, t0)


def spectrum_frame(series: InstFreqSeries) -> pd.DataFrame:
    """Per-sample (time, frequency, amplitude) table; gaps carry NaN frequency."""
    return pd.DataFrame(
        {
            "time_s": series.times,
            "freq_hz": series.freqs,
            "amplitude": series.amps,
        },
        columns=SPECTRUM_COLUMNS,
    )


def write_spectrum_csv(path: Path, series: InstFreqSeries) -> Path:
    buffer = io.StringIO()
    spectrum_frame(series).to_csv(buffer, index=False, float_format="%.17g", lineterminator="\n")
    return atomic_write_text(path, buffer.getvalue())


def read_spectrum_csv(path: Path) -> pd.DataFrame:
    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Spectrum file not found: {path}")
    frame = pd.read_csv(path)
    if list(frame.columns) != SPECTRUM_COLUMNS:
        raise SignalFormatError(f"{path}: expected columns {SPECTRUM_COLUMNS}")
    return frame


def _json_safe(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, np.ndarray):
        return _json_safe(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        number = float(value)
        return number if math.isfinite(number) else None
    if isinstance(value, Path):
        return str(value)
    return value


def write_json(path: Path, payload: dict[str, Any]) -> Path:
    """Write a JSON document; non-finite floats become null."""
    text = json.dumps(_json_safe(payload), indent=2, sort_keys=True, allow_nan=False)
    return atomic_write_text(path, text + "\n")


def read_json(path: Path) -> dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"JSON file not found: {path}")
    data: dict[str, Any] = json.loads(path.read_text(encoding="utf-8"))
    return data
