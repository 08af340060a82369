"""
Morphological filtering of one-dimensional signals.

Implements grey-scale erosion and dilation of a sampled signal s(n) by a
structuring element g(m), their opening/closing cascades and the combined
open-close / close-open filter used for noise reduction:

    erosion   (s - g)(n) = min_m { s(n + m) - g(m) }
    dilation  (s + g)(n) = max_m { s(n - m) + g(m) }
    opening   dilation(erosion(s))
    closing   erosion(dilation(s))
    MMC(s)    = (close(open(s)) + open(close(s))) / 2

Boundary handling replicates the first/last sample (M - 1 samples on each
side) so every operator returns a series of the input length. With this
extension flat erosion and dilation form an exact adjunction, which makes
opening and closing idempotent and keeps the ordering chain
erode <= open <= s <= close <= dilate at the edges as well.

The structuring element index m runs from ``offset`` to ``offset + M - 1``.
The default offset 0 aligns the window on the leading edge exactly as the
formulas above are written.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import NDArray

from boltscan.core.signal_core import Signal, pearson_correlation
from boltscan.errors import ConfigurationError, StructuringElementError
from boltscan.utils.logger import get_logger
from boltscan.utils.validators import validate_open_unit_interval

logger = get_logger(__name__)

DEFAULT_SE_THRESHOLD = 0.95


@dataclass(frozen=True, eq=False)
class StructuringElement:
    """
    Finite structuring element g(m) for m = offset .. offset + M - 1.

    Attributes:
        values: Element heights, same amplitude unit as the signal
        offset: Index m of ``values[0]``; must lie in [-(M - 1), 0]
    """

    values: NDArray[np.float64]
    offset: int = 0

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 1:
            raise StructuringElementError("Structuring element needs at least one value")
        if not np.all(np.isfinite(values)):
            raise StructuringElementError("Structuring element values must be finite")
        offset = int(self.offset)
        if not -(values.size - 1) <= offset <= 0:
            raise StructuringElementError(
                f"Offset must lie in [{-(values.size - 1)}, 0], got {offset}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "offset", offset)

    @classmethod
    def flat(cls, width: int, centered: bool = False) -> StructuringElement:
        """
        Flat (all-zero) element of the given width.

        Args:
            width: Number of points M (>= 1)
            centered: Place the origin in the middle (offset -(M - 1) // 2)
        """
        if width < 1:
            raise StructuringElementError(f"Width must be >= 1, got {width}")
        offset = -((width - 1) // 2) if centered else 0
        return cls(np.zeros(width), offset)

    def __repr__(self) -> str:
        kind = "flat" if self.is_flat else "shaped"
        return f"<StructuringElement({kind}, width={self.width}, offset={self.offset})>"

    @property
    def width(self) -> int:
        return int(self.values.size)

    @property
    def is_flat(self) -> bool:
        return bool(np.all(self.values == 0.0))

    def reflect(self) -> StructuringElement:
        """Index reflection g'(m) = g(-m)."""
        return StructuringElement(self.values[::-1].copy(), -(self.offset + self.width - 1))


@dataclass(frozen=True)
class SESelection:
    """
    Outcome of the structuring-element width sweep.

    Attributes:
        width: Selected flat SE width
        flagged: True when no candidate met the threshold
        threshold: Correlation threshold used
        correlations: Correlation between input and MMC output per width
    """

    width: int
    flagged: bool
    threshold: float
    correlations: dict[int, float] = field(default_factory=dict)


def _windows(s: Signal, se: StructuringElement) -> NDArray[np.float64]:
    if se.width > len(s):
        raise StructuringElementError(
            f"Structuring element width {se.width} exceeds signal length {len(s)}"
        )
    pad = se.width - 1
    padded = np.pad(s.samples, pad, mode="edge")
    return sliding_window_view(padded, se.width)


def erode(s: Signal, g: StructuringElement) -> Signal:
    """
    Grey-scale erosion: out[n] = min_m ext(s)(n + m) - g(m).

    Raises:
        StructuringElementError: If the element is wider than the signal
    """
    windows = _windows(s, g)
    start = g.offset + g.width - 1
    rows = windows[start : start + len(s)]
    return s.with_samples((rows - g.values).min(axis=1))


def dilate(s: Signal, g: StructuringElement) -> Signal:
    """
    Grey-scale dilation: out[n] = max_m ext(s)(n - m) + g(m).

    Raises:
        StructuringElementError: If the element is wider than the signal
    """
    windows = _windows(s, g)
    start = -g.offset
    rows = windows[start : start + len(s)]
    # window position p holds ext(s)(n - offset - (M - 1) + p), i.e. m = M - 1 - p
    return s.with_samples((rows + g.values[::-1]).max(axis=1))


def open(s: Signal, g: StructuringElement) -> Signal:  # noqa: A001
    """Opening: erosion followed by dilation; removes positive impulses narrower than M."""
    return dilate(erode(s, g), g)


def close(s: Signal, g: StructuringElement) -> Signal:
    """Closing: dilation followed by erosion; removes negative impulses narrower than M."""
    return erode(dilate(s, g), g)


def open_close(s: Signal, g: StructuringElement) -> Signal:
    """Open-then-close cascade."""
    return close(open(s, g), g)


def close_open(s: Signal, g: StructuringElement) -> Signal:
    """Close-then-open cascade."""
    return open(close(s, g), g)


def mmc_filter(s: Signal, g: StructuringElement) -> Signal:
    """
    Combined morphological filter: mean of the open-close and close-open cascades.

    Raises:
        StructuringElementError: If the element is wider than the signal
    """
    oc = open_close(s, g)
    co = close_open(s, g)
    return s.with_samples((oc.samples + co.samples) / 2.0)


def filter_correlation(s: Signal, filtered: Signal) -> float:
    """Correlation between a signal and its filtered version; identical series give 1.0."""
    if np.array_equal(s.samples, filtered.samples):
        return 1.0
    return pearson_correlation(s, filtered)


def select_se_width(
    s: Signal,
    widths: Iterable[int],
    threshold: float = DEFAULT_SE_THRESHOLD,
) -> SESelection:
    """
    Choose a flat SE width by the input/output correlation criterion.

    Sweeps the candidate widths and returns the largest one whose MMC output
    still correlates with the input at ``threshold`` or better. When no width
    qualifies the smallest candidate is returned and the selection is flagged.

    Raises:
        ConfigurationError: If the range is empty, holds widths outside [1, N],
            or the threshold is outside (0, 1)
    """
    candidates = sorted(set(int(w) for w in widths))
    if not candidates:
        raise ConfigurationError("Structuring element width range is empty")
    if candidates[0] < 1 or candidates[-1] > len(s):
        raise ConfigurationError(
            f"Widths must lie in [1, {len(s)}], got {candidates[0]}..{candidates[-1]}"
        )
    threshold = validate_open_unit_interval(threshold, "threshold")

    correlations = {
        width: filter_correlation(s, mmc_filter(s, StructuringElement.flat(width)))
        for width in candidates
    }
    qualifying = [w for w, corr in correlations.items() if corr >= threshold]
    if qualifying:
        selection = SESelection(max(qualifying), False, threshold, correlations)
        logger.debug("morphology.se_selected", width=selection.width, threshold=threshold)
    else:
        selection = SESelection(candidates[0], True, threshold, correlations)
        logger.warning(
            "morphology.se_threshold_not_met",
            width=selection.width,
            threshold=threshold,
            best_correlation=max(correlations.values()),
        )
    return selection
