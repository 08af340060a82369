"""
Pytest configuration and fixtures.
"""
import numpy as np
import pytest

from boltscan.core.signal_core import Signal
from boltscan.core.synthesis import gen_bolt_echo, gen_piecewise
from boltscan.core.vmd_solver import VMDResult, vmd_decompose
from boltscan.schemas.vmd import VMDConfig
from boltscan.utils.logger import setup_logging
from tests.fixtures.signals import BOLT_SPEC, SILENT_BOLT_SPEC, TWO_TONE_SPEC, tone


@pytest.fixture(autouse=True)
def configure_logging():
    """Bind structured logs to the active stderr at WARNING around each test."""
    setup_logging("WARNING", "text")
    yield
    setup_logging("WARNING", "text")


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded random generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def two_tone_signal() -> Signal:
    """10/20/10 kHz piecewise tone, 2000 samples at 1 MHz."""
    return gen_piecewise(TWO_TONE_SPEC)


@pytest.fixture(scope="session")
def two_tone_result() -> VMDResult:
    """K=2 decomposition of the clean two-tone record (computed once)."""
    return vmd_decompose(gen_piecewise(TWO_TONE_SPEC), VMDConfig(K=2))


@pytest.fixture
def tone_10k() -> Signal:
    """10 kHz cosine, exactly 20 periods at 1 MHz."""
    return tone(10e3)


@pytest.fixture
def bolt_record() -> Signal:
    """Clean synthetic 3 m bolt record."""
    return gen_bolt_echo(BOLT_SPEC)


@pytest.fixture
def silent_bolt_record() -> Signal:
    """Bolt record without a bottom reflection."""
    return gen_bolt_echo(SILENT_BOLT_SPEC)


@pytest.fixture
def output_dir(tmp_path):
    """Empty artifact directory."""
    path = tmp_path / "out"
    path.mkdir()
    return path
