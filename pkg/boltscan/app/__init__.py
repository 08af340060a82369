"""Command-line application and process settings."""
from .config import Settings, get_settings, resolve_output_dir

__all__ = ["Settings", "get_settings", "resolve_output_dir"]
