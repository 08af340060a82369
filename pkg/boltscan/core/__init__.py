"""Numerical core: signals, morphology, VMD, Hilbert analysis, synthesis and bolt analysis."""
from .bolt_analysis import (
    BatchOutcome,
    BoltAnalyzer,
    EchoPick,
    analyze_record,
    bolt_report,
    detect_echo,
    estimate_length,
    mf_vmd,
)
from .hilbert_spectrum import (
    HilbertSpectrum,
    InstFreqSeries,
    Ridge,
    analytic_signal,
    detect_transitions,
    envelope,
    hilbert_spectrum,
    instantaneous_frequency,
)
from .morphology import (
    SESelection,
    StructuringElement,
    close_open,
    dilate,
    erode,
    mmc_filter,
    open_close,
    select_se_width,
)
from .signal_core import (
    ComplexSignal,
    PowerSpectrum,
    Signal,
    pearson_correlation,
    power_spectrum,
    snr_db,
)
from .synthesis import add_noise, gaussian_pulse, gen_bolt_echo, gen_piecewise, tone_components
from .vmd_solver import (
    Mode,
    VMDResult,
    reconstruct,
    update_lagrangian,
    update_mode_k,
    update_omega_k,
    vmd_decompose,
)

__all__ = [
    # Signals
    "ComplexSignal",
    "PowerSpectrum",
    "Signal",
    "pearson_correlation",
    "power_spectrum",
    "snr_db",
    # Morphology (open/close are used as morphology.open / morphology.close)
    "SESelection",
    "StructuringElement",
    "close_open",
    "dilate",
    "erode",
    "mmc_filter",
    "open_close",
    "select_se_width",
    # VMD
    "Mode",
    "VMDResult",
    "reconstruct",
    "update_lagrangian",
    "update_mode_k",
    "update_omega_k",
    "vmd_decompose",
    # Hilbert analysis
    "HilbertSpectrum",
    "InstFreqSeries",
    "Ridge",
    "analytic_signal",
    "detect_transitions",
    "envelope",
    "hilbert_spectrum",
    "instantaneous_frequency",
    # Synthesis
    "add_noise",
    "gaussian_pulse",
    "gen_bolt_echo",
    "gen_piecewise",
    "tone_components",
    # Bolt analysis
    "BatchOutcome",
    "BoltAnalyzer",
    "EchoPick",
    "analyze_record",
    "bolt_report",
    "detect_echo",
    "estimate_length",
    "mf_vmd",
]
