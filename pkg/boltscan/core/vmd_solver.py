"""
Variational Mode Decomposition (VMD).

Decomposes a signal f into K band-limited modes u_k with center frequencies
omega_k by minimizing the summed demodulated bandwidths subject to
sum_k u_k = f. The constrained problem is relaxed into an augmented
Lagrangian (quadratic fidelity penalty plus multiplier lambda) and solved by
alternating-direction updates in the frequency domain:

    u_k(w)   <- (f(w) - sum_{i != k} u_i(w) + lambda(w) / 2) / (1 + 2 alpha (w - omega_k)^2)
    omega_k  <- centroid of |u_k(w)|^2 over w >= 0
    lambda   <- lambda + tau (f - sum_k u_k)

Frequencies inside the iteration are normalized (cycles per sample) so that
``alpha`` is dimensionless; reported center frequencies are in Hz.

The input is mirror-extended by half its length on each side before the
transform and the modes are truncated back to the original support. Only
the non-negative half spectrum (the analytic signal) is iterated; real modes
are rebuilt from it by Hermitian symmetry.
"""
from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy import fft

from boltscan.core.signal_core import Signal
from boltscan.errors import ConfigurationError
from boltscan.schemas.vmd import InitPolicy, VMDConfig
from boltscan.utils.logger import get_logger

logger = get_logger(__name__)

ComplexArray = NDArray[np.complex128]
FloatArray = NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class Mode:
    """
    One intrinsic mode function.

    Attributes:
        u: Mode waveform on the input time grid
        omega: Center frequency in Hz, within [0, Nyquist]
    """

    u: Signal
    omega: float

    def __repr__(self) -> str:
        return f"<Mode(omega={self.omega:.1f} Hz, n={len(self.u)})>"


@dataclass(frozen=True, eq=False)
class VMDResult:
    """
    Output of a decomposition.

    ``residual`` is the input minus the sum of the modes and ``source`` keeps
    the decomposed input, so ``reconstruct`` returns it exactly.

    Attributes:
        modes: K modes sorted by ascending center frequency
        residual: Input minus the sum of modes
        iterations: Number of completed iterations
        converged: True when the tolerance stop fired before ``max_iters``
        final_change: Last relative update norm
        omega_history: Center frequencies (Hz) per iteration, columns in mode order
        diagnostics: Additional solver/pipeline information
        source: Signal the modes were computed from
    """

    modes: tuple[Mode, ...]
    residual: Signal
    iterations: int
    converged: bool
    final_change: float
    omega_history: FloatArray = field(default_factory=lambda: np.zeros((0, 0)))
    diagnostics: Mapping[str, Any] = field(default_factory=dict)
    source: Signal | None = None

    @property
    def omegas(self) -> FloatArray:
        return np.array([mode.omega for mode in self.modes])

    @property
    def K(self) -> int:
        return len(self.modes)

    def mode_matrix(self) -> FloatArray:
        """Modes stacked as a (K, N) array."""
        return np.vstack([mode.u.samples for mode in self.modes])

    def summary(self) -> dict[str, Any]:
        """JSON-ready summary of the decomposition."""
        return {
            "omegas_hz": [float(w) for w in self.omegas],
            "iterations": self.iterations,
            "converged": self.converged,
            "residual_norm": float(np.linalg.norm(self.residual.samples)),
        }


def update_mode_k(
    f_hat: ComplexArray,
    u_hat: ComplexArray,
    lambda_hat: ComplexArray,
    freqs: FloatArray,
    omegas: FloatArray,
    k: int,
    alpha: float,
) -> ComplexArray:
    """
    Wiener-filter update of the spectrum of mode k.

    Args:
        f_hat: Input spectrum
        u_hat: Current mode spectra, shape (K, T)
        lambda_hat: Multiplier spectrum
        freqs: Frequency grid (normalized, same units as ``omegas``)
        omegas: Current center frequencies
        k: Mode to update
        alpha: Bandwidth penalty

    Returns:
        Updated spectrum of mode k; the denominator is >= 1 everywhere
    """
    others = u_hat.sum(axis=0) - u_hat[k]
    numerator = f_hat - others + lambda_hat / 2.0
    denominator = 1.0 + 2.0 * alpha * (freqs - omegas[k]) ** 2
    return numerator / denominator


def update_omega_k(u_hat_k: ComplexArray, freqs: FloatArray, previous: float) -> float:
    """
    Spectral centroid of a mode over the non-negative frequencies.

    A mode with zero power keeps its previous center frequency.
    """
    positive = freqs >= 0
    power = np.abs(u_hat_k[positive]) ** 2
    total = float(np.sum(power))
    if total == 0.0:
        return previous
    return float(np.dot(freqs[positive], power) / total)


def update_lagrangian(
    lambda_hat: ComplexArray, f_hat: ComplexArray, sum_modes_hat: ComplexArray, tau: float
) -> ComplexArray:
    """Dual ascent step lambda <- lambda + tau (f - sum_k u_k)."""
    return lambda_hat + tau * (f_hat - sum_modes_hat)


def _mirror_extend(samples: FloatArray) -> tuple[FloatArray, int]:
    n = samples.size
    left = n // 2
    right = n - left
    mirrored = np.concatenate([samples[:left][::-1], samples, samples[n - right :][::-1]])
    return mirrored, left


def _initial_omegas(cfg: VMDConfig, T: int) -> FloatArray:
    K = cfg.K
    if cfg.init is InitPolicy.UNIFORM:
        # evenly over (0, Nyquist/2]
        return 0.25 * np.arange(1, K + 1) / K
    if cfg.init is InitPolicy.ZERO:
        return np.zeros(K)
    rng = np.random.default_rng(cfg.seed)
    low = math.log(1.0 / T)
    return np.sort(np.exp(low + (math.log(0.5) - low) * rng.random(K)))


def _relative_change(current: ComplexArray, previous: ComplexArray) -> float:
    diff = np.sum(np.abs(current - previous) ** 2, axis=1)
    base = np.sum(np.abs(previous) ** 2, axis=1)
    total = 0.0
    for d, b in zip(diff, base):
        if b > 0.0:
            total += float(d / b)
        elif d > 0.0:
            return math.inf
    return total


def _hermitian_modes(u_hat: ComplexArray) -> tuple[FloatArray, float]:
    """Rebuild real time-domain modes from their non-negative half spectra."""
    K, T = u_hat.shape
    half = T // 2
    full = np.zeros((K, T), dtype=np.complex128)
    full[:, half + 1 :] = u_hat[:, half + 1 :]
    full[:, half] = u_hat[:, half].real
    full[:, 1:half] = np.conj(u_hat[:, T - 1 : half : -1])
    waveforms = fft.ifft(fft.ifftshift(full, axes=-1), axis=-1)
    leakage = float(np.max(np.abs(waveforms.imag))) if waveforms.size else 0.0
    return waveforms.real, leakage


def vmd_decompose(s: Signal, cfg: VMDConfig | None = None) -> VMDResult:
    """
    Decompose a signal into ``cfg.K`` modes.

    Iteration stops when sum_k ||u_k^{n+1} - u_k^n||^2 / ||u_k^n||^2 < tol or
    after ``max_iters`` sweeps. An all-zero input returns K zero modes at
    their initial center frequencies.

    Raises:
        ConfigurationError: If the signal is shorter than 2K samples
    """
    cfg = cfg or VMDConfig()
    n = len(s)
    if n < 2 * cfg.K:
        raise ConfigurationError(f"Signal of length {n} is too short for K={cfg.K} modes")

    mirrored, left = _mirror_extend(s.samples)
    T = mirrored.size
    half = T // 2
    freqs = fft.fftshift(fft.fftfreq(T))

    f_hat = fft.fftshift(fft.fft(mirrored))
    f_hat_plus = f_hat.copy()
    f_hat_plus[:half] = 0.0

    omegas = _initial_omegas(cfg, T)
    u_hat = np.zeros((cfg.K, T), dtype=np.complex128)
    lambda_hat = np.zeros(T, dtype=np.complex128)
    history = [omegas.copy()]

    converged = False
    change = math.inf
    iterations = 0
    for iterations in range(1, cfg.max_iters + 1):
        previous = u_hat.copy()
        for k in range(cfg.K):
            u_hat[k] = update_mode_k(f_hat_plus, u_hat, lambda_hat, freqs, omegas, k, cfg.alpha)
            omegas[k] = update_omega_k(u_hat[k], freqs, omegas[k])
        lambda_hat = update_lagrangian(lambda_hat, f_hat_plus, u_hat.sum(axis=0), cfg.tau)
        history.append(omegas.copy())
        change = _relative_change(u_hat, previous)
        if change < cfg.tol:
            converged = True
            break

    order = np.argsort(omegas, kind="stable")
    waveforms, leakage = _hermitian_modes(u_hat[order])
    waveforms = waveforms[:, left : left + n]

    modes = tuple(
        Mode(u=s.with_samples(waveforms[i]), omega=float(omegas[k] / s.dt))
        for i, k in enumerate(order)
    )
    residual = s.with_samples(s.samples - waveforms.sum(axis=0))
    omega_history = np.array(history)[:, order] / s.dt

    diagnostics: dict[str, Any] = {
        "imag_leakage": leakage,
        "mirror_length": T,
        "coincident_modes": _coincident_pairs(omegas[order], 1.0 / T),
        "overcrowded_spectrum": cfg.K * 2.0 / math.sqrt(2.0 * cfg.alpha) > 0.5,
    }
    if diagnostics["overcrowded_spectrum"]:
        logger.warning("vmd.overcrowded_spectrum", K=cfg.K, alpha=cfg.alpha)
    if not converged:
        logger.info("vmd.max_iters_reached", iterations=iterations, final_change=change)

    logger.debug(
        "vmd.decomposed",
        K=cfg.K,
        iterations=iterations,
        converged=converged,
        omegas_hz=[round(m.omega, 3) for m in modes],
    )
    return VMDResult(
        modes=modes,
        residual=residual,
        iterations=iterations,
        converged=converged,
        final_change=float(change),
        omega_history=omega_history,
        diagnostics=diagnostics,
        source=s,
    )


def _coincident_pairs(omegas: FloatArray, resolution: float) -> list[tuple[int, int]]:
    return [
        (i, i + 1)
        for i in range(omegas.size - 1)
        if abs(float(omegas[i + 1] - omegas[i])) < resolution
    ]


def reconstruct(result: VMDResult) -> Signal:
    """The decomposed input, equal to the sum of the modes plus the residual."""
    if result.source is not None:
        return result.source
    total = result.residual.samples.copy()
    if result.modes:
        total = result.mode_matrix().sum(axis=0) + result.residual.samples
    return result.residual.with_samples(total)
