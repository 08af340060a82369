"""
SVG figures of signals, modes, Hilbert spectra and bolt analyses.

Figures are built on ``matplotlib.figure.Figure`` (no pyplot global state)
and serialized to standalone SVG text. A fixed hash salt, text-as-text fonts
and an empty date make the output byte-identical across runs.
"""
from __future__ import annotations

import io
from collections.abc import Sequence

import matplotlib
from matplotlib.figure import Figure

from boltscan.core.hilbert_spectrum import HilbertSpectrum
from boltscan.core.signal_core import Signal
from boltscan.core.vmd_solver import Mode
from boltscan.errors import PlotError
from boltscan.schemas.analysis import BoltReport

_SVG_RC = {"svg.hashsalt": "boltscan", "svg.fonttype": "none"}
_PANEL_HEIGHT = 1.6
_WIDTH = 8.0


def _to_svg(fig: Figure) -> str:
    buffer = io.StringIO()
    with matplotlib.rc_context(_SVG_RC):
        fig.savefig(buffer, format="svg", metadata={"Date": None}, bbox_inches="tight")
    return buffer.getvalue()


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise PlotError(message)


def plot_signal(s: Signal, title: str = "Signal") -> str:
    """Waveform plot, time in ms against amplitude."""
    _require(len(s) > 0, "Cannot plot an empty signal")
    fig = Figure(figsize=(_WIDTH, 3.0))
    ax = fig.add_subplot()
    ax.plot(s.times * 1e3, s.samples, linewidth=0.8, color="tab:blue")
    ax.set_title(title)
    ax.set_xlabel("Time (ms)")
    ax.set_ylabel("Amplitude")
    ax.grid(True, alpha=0.3)
    return _to_svg(fig)


def plot_modes(modes: Sequence[Mode], title: str = "Intrinsic mode functions") -> str:
    """One stacked panel per mode, labelled with its center frequency."""
    _require(len(modes) > 0, "Cannot plot an empty set of modes")
    fig = Figure(figsize=(_WIDTH, _PANEL_HEIGHT * len(modes) + 0.8))
    axes = fig.subplots(len(modes), 1, sharex=True, squeeze=False)[:, 0]
    for index, (ax, mode) in enumerate(zip(axes, modes)):
        ax.plot(mode.u.times * 1e3, mode.u.samples, linewidth=0.8, color="tab:blue")
        ax.set_ylabel(f"IMF{index + 1}\nAmplitude")
        ax.text(
            0.99,
            0.85,
            f"{mode.omega / 1e3:.2f} kHz",
            transform=ax.transAxes,
            ha="right",
            fontsize=8,
        )
        ax.grid(True, alpha=0.3)
    axes[0].set_title(title)
    axes[-1].set_xlabel("Time (ms)")
    return _to_svg(fig)


def plot_spectrum(spectrum: HilbertSpectrum, title: str = "Hilbert instantaneous frequency") -> str:
    """Amplitude-weighted time-frequency image with per-mode ridge tracks."""
    _require(len(spectrum) > 0 and spectrum.times.size > 0, "Cannot plot an empty spectrum")
    image, edges = spectrum.intensity()
    fig = Figure(figsize=(_WIDTH, 4.0))
    ax = fig.add_subplot()
    extent = (
        float(spectrum.times[0] * 1e3),
        float(spectrum.times[-1] * 1e3),
        float(edges[0] / 1e3),
        float(edges[-1] / 1e3),
    )
    mesh = ax.imshow(image, origin="lower", aspect="auto", extent=extent, cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="Amplitude")
    for item in spectrum.series:
        if not item.is_empty:
            ax.plot(item.times * 1e3, item.freqs / 1e3, linewidth=0.5, color="white", alpha=0.6)
    ax.set_title(title)
    ax.set_xlabel("Time (ms)")
    ax.set_ylabel("Frequency (kHz)")
    return _to_svg(fig)


def plot_analysis(s: Signal, modes: Sequence[Mode], report: BoltReport) -> str:
    """Record and modes with the picked reflection marked."""
    _require(len(s) > 0 and len(modes) > 0, "Cannot plot an analysis without data")
    panels = len(modes) + 1
    fig = Figure(figsize=(_WIDTH, _PANEL_HEIGHT * panels + 0.8))
    axes = fig.subplots(panels, 1, sharex=True, squeeze=False)[:, 0]
    echo_ms = (s.t0 + report.echo_time) * 1e3

    axes[0].plot(s.times * 1e3, s.samples, linewidth=0.8, color="tab:gray")
    axes[0].set_ylabel("Record\nAmplitude")
    axes[0].set_title(
        f"Bottom reflection at {report.echo_time * 1e3:.3f} ms, "
        f"L = {report.estimated_length:.2f} m"
    )
    for index, (ax, mode) in enumerate(zip(axes[1:], modes)):
        color = "tab:red" if index == report.carrier_mode_index else "tab:blue"
        ax.plot(mode.u.times * 1e3, mode.u.samples, linewidth=0.8, color=color)
        ax.set_ylabel(f"IMF{index + 1}\nAmplitude")
    for ax in axes:
        ax.axvline(echo_ms, color="tab:red", linestyle="--", linewidth=0.8)
        ax.grid(True, alpha=0.3)
    axes[-1].set_xlabel("Time (ms)")
    return _to_svg(fig)

