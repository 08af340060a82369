"""
Unit tests for signal types, correlation, SNR and power spectra.
"""
import math

import numpy as np
import pytest

from boltscan.core.signal_core import (
    ComplexSignal,
    Signal,
    pearson_correlation,
    power_spectrum,
    snr_db,
)
from boltscan.errors import (
    InfiniteSNRError,
    InvalidSignalError,
    LengthMismatchError,
    UndefinedCorrelationError,
    ZeroPowerError,
)
from tests.fixtures.signals import random_signal, tone


class TestSignal:
    """Tests for Signal."""

    def test_grid_properties(self):
        """Test sampling-rate derived properties."""
        s = Signal(np.zeros(2000), 1e-6, t0=0.5)

        assert len(s) == 2000
        assert s.fs == pytest.approx(1e6)
        assert s.nyquist == pytest.approx(5e5)
        assert s.duration == pytest.approx(2e-3)
        assert s.times[0] == 0.5
        assert s.times[1] == pytest.approx(0.5 + 1e-6)

    def test_samples_are_read_only(self):
        """Test that a signal cannot be mutated in place."""
        s = Signal([1.0, 2.0, 3.0], 1.0)

        with pytest.raises(ValueError):
            s.samples[0] = 5.0

    def test_input_array_is_copied(self):
        """Test that later changes to the source array do not leak in."""
        source = np.array([1.0, 2.0, 3.0])
        s = Signal(source, 1.0)
        source[0] = 9.0

        assert s.samples[0] == 1.0

    @pytest.mark.parametrize("samples", [[1.0], [], [1.0, math.nan], [1.0, math.inf]])
    def test_invalid_samples_rejected(self, samples):
        """Test that short or non-finite series are rejected."""
        with pytest.raises(InvalidSignalError):
            Signal(samples, 1.0)

    @pytest.mark.parametrize("dt", [0.0, -1e-6, math.nan, math.inf, "abc"])
    def test_invalid_interval_rejected(self, dt):
        """Test that the sample interval must be finite and positive."""
        with pytest.raises(InvalidSignalError):
            Signal([0.0, 1.0], dt)

    def test_two_dimensional_samples_rejected(self):
        """Test that only one-dimensional series are accepted."""
        with pytest.raises(InvalidSignalError):
            Signal(np.zeros((2, 2)), 1.0)

    def test_energy_and_power(self):
        """Test energy and mean power."""
        s = Signal([1.0, -1.0, 2.0, 0.0], 1.0)

        assert s.energy() == 6.0
        assert s.power() == 1.5

    def test_with_samples_keeps_grid(self):
        """Test that with_samples keeps dt and t0."""
        s = Signal([1.0, 2.0], 0.25, t0=3.0)
        other = s.with_samples([5.0, 6.0])

        assert other.dt == 0.25
        assert other.t0 == 3.0
        assert list(other.samples) == [5.0, 6.0]


class TestComplexSignal:
    """Tests for ComplexSignal."""

    def test_length_mismatch(self):
        """Test that real and imaginary parts must align."""
        with pytest.raises(LengthMismatchError):
            ComplexSignal(np.zeros(3), np.zeros(4), 1.0)

    def test_amplitude_and_real_part(self):
        """Test modulus and real-part extraction."""
        z = ComplexSignal.from_complex([3 + 4j, -1 + 0j], 0.5)

        np.testing.assert_allclose(z.amplitude, [5.0, 1.0])
        assert list(z.real_part().samples) == [3.0, -1.0]
        assert z.real_part().dt == 0.5


class TestPearsonCorrelation:
    """Tests for pearson_correlation."""

    def test_identical_signals(self):
        """Test that a signal correlates perfectly with itself."""
        s = random_signal(0)

        assert pearson_correlation(s, s) == pytest.approx(1.0)

    def test_negated_signal(self):
        """Test that negation gives -1."""
        s = random_signal(1)

        assert pearson_correlation(s, s.with_samples(-s.samples)) == pytest.approx(-1.0)

    def test_affine_invariance(self):
        """Test invariance to positive scaling and offsets."""
        a, b = random_signal(2), random_signal(3)
        shifted = b.with_samples(4.0 * b.samples + 7.0)

        assert pearson_correlation(a, shifted) == pytest.approx(pearson_correlation(a, b))

    def test_result_is_bounded(self):
        """Test that the coefficient stays inside [-1, 1]."""
        for seed in range(20):
            value = pearson_correlation(random_signal(seed), random_signal(seed + 100))
            assert -1.0 <= value <= 1.0

    def test_both_constant_raises(self):
        """Test that two constant signals have no defined correlation."""
        c = Signal(np.ones(10), 1.0)

        with pytest.raises(UndefinedCorrelationError):
            pearson_correlation(c, c)

    def test_one_constant_gives_zero(self):
        """Test that a constant paired with a varying signal gives 0."""
        c = Signal(np.ones(256), 1e-3)

        assert pearson_correlation(c, random_signal(4)) == 0.0
        assert pearson_correlation(random_signal(4), c) == 0.0

    def test_length_mismatch(self):
        """Test that signals must be aligned."""
        with pytest.raises(LengthMismatchError):
            pearson_correlation(random_signal(0, n=10), random_signal(0, n=11))


class TestSnrDb:
    """Tests for snr_db."""

    def test_known_ratio(self):
        """Test a 20 dB configuration."""
        clean = Signal([1.0, -1.0, 1.0, -1.0], 1.0)
        noisy = clean.with_samples(clean.samples + 0.1)

        assert snr_db(clean, noisy) == pytest.approx(20.0)

    def test_decreases_with_noise_gain(self):
        """Test that a louder copy of the same noise lowers the SNR."""
        clean = tone(10e3)
        noise = random_signal(5, n=len(clean), dt=clean.dt).samples
        gains = [0.01, 0.1, 0.5, 1.0, 2.0, 10.0]

        values = [snr_db(clean, clean.with_samples(clean.samples + g * noise)) for g in gains]

        assert all(later < earlier for earlier, later in zip(values, values[1:]))

    def test_noise_free_raises(self):
        """Test that zero noise power is reported as infinite SNR."""
        clean = random_signal(0)

        with pytest.raises(InfiniteSNRError):
            snr_db(clean, clean)

    def test_zero_clean_power_raises(self):
        """Test that a silent reference is rejected."""
        clean = Signal(np.zeros(8), 1.0)

        with pytest.raises(ZeroPowerError):
            snr_db(clean, clean.with_samples(np.ones(8)))

    def test_length_mismatch(self):
        """Test that signals must be aligned."""
        with pytest.raises(LengthMismatchError):
            snr_db(random_signal(0, n=10), random_signal(0, n=12))


class TestPowerSpectrum:
    """Tests for power_spectrum."""

    @pytest.mark.parametrize("n", [256, 257])
    def test_bins_sum_to_energy(self, n):
        """Test that the one-sided bins sum to the time-domain energy."""
        s = random_signal(7, n=n)

        assert power_spectrum(s).total() == pytest.approx(s.energy(), rel=1e-10)

    def test_frequency_grid(self):
        """Test the k / (N dt) grid."""
        spectrum = power_spectrum(Signal(np.zeros(8), 0.5))

        np.testing.assert_allclose(spectrum.freqs, [0.0, 0.25, 0.5, 0.75, 1.0])
        assert spectrum.as_array().shape == (5, 2)

    def test_tone_peak(self):
        """Test that a tone peaks at its own frequency."""
        spectrum = power_spectrum(tone(10e3))

        assert spectrum.peak_frequency() == pytest.approx(10e3)
