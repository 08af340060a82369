"""
Unit tests for the variational mode decomposition solver.
"""
import numpy as np
import pytest
from pydantic import ValidationError

from boltscan.core.signal_core import Signal, pearson_correlation
from boltscan.core.vmd_solver import (
    reconstruct,
    update_lagrangian,
    update_mode_k,
    update_omega_k,
    vmd_decompose,
)
from boltscan.errors import ConfigurationError
from boltscan.schemas.vmd import InitPolicy, VMDConfig
from tests.fixtures.signals import random_signal, tone


class TestUpdateModeK:
    """Tests for the Wiener-filter mode update."""

    def test_unit_gain_at_center(self):
        """Test that the bin at omega_k passes unchanged."""
        freqs = np.array([0.0, 0.1, 0.2])
        f_hat = np.array([0.0, 1.0 + 1.0j, 0.0])
        u_hat = np.zeros((1, 3), dtype=complex)
        updated = update_mode_k(
            f_hat, u_hat, np.zeros(3, dtype=complex), freqs, np.array([0.1]), 0, 50.0
        )

        np.testing.assert_array_equal(updated, f_hat)

    def test_half_gain_point(self):
        """Test gain 1/2 where 2 alpha (f - omega)^2 = 1."""
        freqs = np.array([0.0, 0.5])
        f_hat = np.array([0.0, 1.0], dtype=complex)
        updated = update_mode_k(
            f_hat,
            np.zeros((1, 2), dtype=complex),
            np.zeros(2, dtype=complex),
            freqs,
            np.zeros(1),
            0,
            2.0,
        )

        assert updated[1] == 0.5

    def test_never_amplifies(self, rng):
        """Test that the denominator is at least one everywhere."""
        freqs = np.linspace(-0.5, 0.5, 64, endpoint=False)
        f_hat = rng.normal(size=64) + 1j * rng.normal(size=64)
        updated = update_mode_k(
            f_hat,
            np.zeros((2, 64), dtype=complex),
            np.zeros(64, dtype=complex),
            freqs,
            np.array([0.1, 0.3]),
            1,
            2000.0,
        )

        assert np.all(np.abs(updated) <= np.abs(f_hat) + 1e-15)

    def test_subtracts_other_modes_and_adds_half_multiplier(self):
        """Test the numerator f - sum_{i != k} u_i + lambda / 2."""
        freqs = np.array([0.25])
        u_hat = np.array([[5.0], [2.0]], dtype=complex)
        updated = update_mode_k(
            np.array([3.0 + 0j]),
            u_hat,
            np.array([4.0 + 0j]),
            freqs,
            np.array([0.25, 0.4]),
            0,
            100.0,
        )

        # own previous value (5) is ignored
        assert updated[0] == pytest.approx(3.0 - 2.0 + 2.0)

    def test_zero_input(self):
        """Test that a zero spectrum stays zero."""
        updated = update_mode_k(
            np.zeros(4, dtype=complex),
            np.zeros((1, 4), dtype=complex),
            np.zeros(4, dtype=complex),
            np.linspace(-0.5, 0.25, 4),
            np.array([0.1]),
            0,
            10.0,
        )

        np.testing.assert_array_equal(updated, np.zeros(4))


class TestUpdateOmegaK:
    """Tests for the spectral centroid update."""

    def test_single_bin(self):
        """Test that one populated bin sets the center frequency."""
        freqs = np.array([-0.25, 0.0, 0.25])

        assert update_omega_k(np.array([0.0, 0.0, 3.0 + 4.0j]), freqs, 0.1) == pytest.approx(0.25)

    def test_symmetric_power(self):
        """Test the centroid of two equal bins."""
        freqs = np.array([0.0, 0.1, 0.2, 0.3])

        assert update_omega_k(np.array([0, 1.0, 0, 1.0]), freqs, 0.0) == pytest.approx(0.2)

    def test_zero_power_keeps_previous(self):
        """Test that an empty mode keeps its previous center."""
        assert update_omega_k(np.zeros(4, dtype=complex), np.linspace(0, 0.3, 4), 0.17) == 0.17

    def test_negative_frequencies_ignored(self):
        """Test that only the non-negative half contributes."""
        freqs = np.array([-0.2, 0.0, 0.2])

        assert update_omega_k(np.array([10.0, 0.0, 1.0]), freqs, 0.0) == pytest.approx(0.2)


class TestUpdateLagrangian:
    """Tests for the dual ascent step."""

    def test_zero_step(self):
        """Test that tau = 0 leaves the multiplier unchanged."""
        lam = np.array([1.0 + 2.0j, -3.0])

        np.testing.assert_array_equal(update_lagrangian(lam, np.ones(2), np.zeros(2), 0.0), lam)

    def test_exact_reconstruction(self):
        """Test that a closed constraint leaves the multiplier unchanged."""
        lam = np.array([0.5, 0.25], dtype=complex)
        f_hat = np.array([1.0, 2.0], dtype=complex)

        np.testing.assert_array_equal(update_lagrangian(lam, f_hat, f_hat.copy(), 0.7), lam)

    def test_step(self):
        """Test lambda + tau (f - sum u)."""
        updated = update_lagrangian(
            np.array([1.0 + 0j]), np.array([3.0 + 0j]), np.array([1.0 + 0j]), 0.5
        )

        assert updated[0] == pytest.approx(2.0)


class TestVmdDecompose:
    """Tests for vmd_decompose."""

    def test_pure_tone_single_mode(self, tone_10k):
        """Test that K=1 recovers a pure tone."""
        result = vmd_decompose(tone_10k, VMDConfig(K=1))

        assert result.K == 1
        assert result.omegas[0] == pytest.approx(10e3, rel=0.01)
        assert pearson_correlation(result.modes[0].u, tone_10k) >= 0.999
        residual_ratio = np.linalg.norm(result.residual.samples) / np.linalg.norm(tone_10k.samples)
        assert residual_ratio <= 0.05

    def test_additive_closure(self):
        """Test that modes plus residual reproduce the input."""
        s = random_signal(3, n=300, dt=1e-6)
        result = vmd_decompose(s, VMDConfig(K=3, max_iters=50))

        total = result.mode_matrix().sum(axis=0) + result.residual.samples
        np.testing.assert_allclose(total, s.samples, rtol=0, atol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_reconstruct_is_exact(self, seed):
        """Test that reconstruct returns the input bit for bit."""
        s = random_signal(seed, n=300, dt=1e-6)
        result = vmd_decompose(s, VMDConfig(K=3, max_iters=30))

        rebuilt = reconstruct(result)
        np.testing.assert_array_equal(rebuilt.samples, s.samples)
        assert rebuilt.dt == s.dt

    def test_modes_on_input_grid(self, two_tone_result, two_tone_signal):
        """Test mode length, grid and center-frequency range."""
        for mode in two_tone_result.modes:
            assert len(mode.u) == len(two_tone_signal)
            assert mode.u.dt == two_tone_signal.dt
            assert 0.0 <= mode.omega <= two_tone_signal.nyquist

    def test_omegas_ascending(self, two_tone_result):
        """Test that modes are ordered by center frequency."""
        assert np.all(np.diff(two_tone_result.omegas) >= 0)

    def test_two_tone_center_frequencies(self, two_tone_result):
        """Test that K=2 locates the 10 kHz and 20 kHz regimes."""
        np.testing.assert_allclose(two_tone_result.omegas, [10e3, 20e3], rtol=0.05)

    def test_two_tone_residual(self, two_tone_result, two_tone_signal):
        """Test that the two modes carry almost all of the record."""
        ratio = np.linalg.norm(two_tone_result.residual.samples) / np.linalg.norm(
            two_tone_signal.samples
        )

        assert ratio <= 0.05

    def test_omega_history(self, two_tone_result):
        """Test that the history holds the initial and every iterated state."""
        history = two_tone_result.omega_history

        assert history.shape == (two_tone_result.iterations + 1, 2)
        np.testing.assert_allclose(history[-1], two_tone_result.omegas)

    def test_zero_signal(self):
        """Test that silence yields zero modes at the initial centers."""
        s = Signal(np.zeros(64), 1e-6)
        result = vmd_decompose(s, VMDConfig(K=3))

        assert result.converged
        assert result.iterations == 1
        np.testing.assert_array_equal(result.mode_matrix(), np.zeros((3, 64)))
        np.testing.assert_array_equal(result.residual.samples, np.zeros(64))
        np.testing.assert_allclose(result.omegas, 0.25 * np.arange(1, 4) / 3 / 1e-6)

    def test_deterministic(self):
        """Test that repeated runs are identical."""
        s = random_signal(4, n=200, dt=1e-5)
        cfg = VMDConfig(K=2, max_iters=100)
        first, second = vmd_decompose(s, cfg), vmd_decompose(s, cfg)

        np.testing.assert_array_equal(first.mode_matrix(), second.mode_matrix())
        np.testing.assert_array_equal(first.omegas, second.omegas)

    def test_random_init_reproducible(self):
        """Test that seeded random initialization is repeatable."""
        s = random_signal(5, n=200, dt=1e-5)
        cfg = VMDConfig(K=2, init=InitPolicy.RANDOM, seed=9, max_iters=50)

        np.testing.assert_array_equal(
            vmd_decompose(s, cfg).omega_history[0], vmd_decompose(s, cfg).omega_history[0]
        )

    def test_random_init_requires_seed(self):
        """Test that random initialization without a seed is rejected."""
        with pytest.raises(ValidationError):
            VMDConfig(init=InitPolicy.RANDOM)

    def test_zero_init(self):
        """Test that the zero policy starts every center at DC."""
        result = vmd_decompose(random_signal(6, n=100), VMDConfig(K=2, init="zero", max_iters=1))

        np.testing.assert_array_equal(result.omega_history[0], [0.0, 0.0])

    def test_scale_equivariance(self, two_tone_signal):
        """Test that scaling the input scales the modes and keeps the centers."""
        cfg = VMDConfig(K=2, tol=1e-300, max_iters=100)
        base = vmd_decompose(two_tone_signal, cfg)
        scaled = vmd_decompose(two_tone_signal.with_samples(3.0 * two_tone_signal.samples), cfg)

        expected = 3.0 * base.mode_matrix()
        np.testing.assert_allclose(
            scaled.mode_matrix(), expected, rtol=0, atol=1e-8 * np.max(np.abs(expected))
        )
        np.testing.assert_allclose(
            scaled.omegas, base.omegas, rtol=0, atol=1e-3 * two_tone_signal.nyquist
        )

    def test_iteration_cap(self):
        """Test that max_iters bounds the sweeps and clears the converged flag."""
        result = vmd_decompose(random_signal(7, n=200), VMDConfig(K=2, max_iters=3))

        assert result.iterations == 3
        assert not result.converged

    def test_too_short_for_modes(self):
        """Test that N must be at least 2K."""
        with pytest.raises(ConfigurationError):
            vmd_decompose(Signal(np.ones(5), 1.0), VMDConfig(K=3))

    def test_summary(self, two_tone_result):
        """Test the JSON-ready summary."""
        summary = two_tone_result.summary()

        assert set(summary) == {"omegas_hz", "iterations", "converged", "residual_norm"}
        assert len(summary["omegas_hz"]) == 2

    def test_diagnostics(self):
        """Test solver diagnostics for a small input."""
        result = vmd_decompose(tone(10e3, duration=1e-4), VMDConfig(K=1))

        assert result.diagnostics["mirror_length"] == 200
        assert result.diagnostics["imag_leakage"] < 1e-9
        assert result.diagnostics["coincident_modes"] == []
        assert result.diagnostics["overcrowded_spectrum"] is False
