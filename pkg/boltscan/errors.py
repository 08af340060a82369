"""
Exception hierarchy for boltscan.

Every error carries a stable ``code`` so the CLI can report it as a
machine-readable line. All errors derive from ``ValueError`` because they
describe inputs that violate an operation's contract.
"""


class BoltscanError(ValueError):
    """Base class for contract violations raised by boltscan."""

    code = "E_BOLTSCAN"


class InvalidSignalError(BoltscanError):
    """Signal samples or sampling interval violate the Signal invariants."""

    code = "E_SIGNAL"


class LengthMismatchError(BoltscanError):
    """Two signals that must be aligned have different lengths."""

    code = "E_LENGTH"


class UndefinedCorrelationError(BoltscanError):
    """Correlation requested between two constant series."""

    code = "E_CORRELATION"


class InfiniteSNRError(BoltscanError):
    """Noise power is exactly zero, so the SNR is unbounded."""

    code = "E_INFINITE_SNR"


class ZeroPowerError(BoltscanError):
    """An operation needs a signal with non-zero power."""

    code = "E_ZERO_POWER"


class StructuringElementError(BoltscanError):
    """Structuring element is malformed or wider than the signal."""

    code = "E_SE"


class ConfigurationError(BoltscanError):
    """A configuration value is outside its accepted range."""

    code = "E_CONFIG"


class NoEchoFoundError(BoltscanError):
    """No envelope peak qualified as a bottom reflection."""

    code = "E_NO_ECHO"


class SignalFormatError(BoltscanError):
    """A signal CSV file is malformed or holds non-finite values."""

    code = "E_CSV"


class PlotError(BoltscanError):
    """A figure was requested for empty data."""

    code = "E_PLOT"


class InputFileError(BoltscanError):
    """An input file does not exist or cannot be read."""

    code = "E_FILE_NOT_FOUND"
