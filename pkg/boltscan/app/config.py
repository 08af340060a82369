"""
Process configuration.

Only the output directory can be overridden from the environment
(``BOLTSCAN_OUTPUT_DIR``); every numerical setting comes from CLI flags so a
run is fully described by its provenance record.
"""
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_OUTPUT_DIR = Path("boltscan-out")


class Settings(BaseSettings):
    """Settings loaded from environment variables (prefix ``BOLTSCAN_``)."""

    model_config = SettingsConfigDict(
        env_prefix="BOLTSCAN_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    OUTPUT_DIR: Path = Field(
        default=DEFAULT_OUTPUT_DIR,
        description="Directory receiving run artifacts",
    )


def get_settings() -> Settings:
    """Read settings from the current environment."""
    return Settings()


def resolve_output_dir(cli_value: Path | None, settings: Settings | None = None) -> Path:
    """CLI ``--output-dir`` wins over ``BOLTSCAN_OUTPUT_DIR``, which wins over the default."""
    if cli_value is not None:
        return Path(cli_value)
    return (settings or get_settings()).OUTPUT_DIR
