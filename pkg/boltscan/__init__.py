"""Bolt anchoring echo analysis with MF-VMD."""

__version__ = "0.1.0"
