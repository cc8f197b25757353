"""Clustered wideband channel with frequency-dependent array responses.

The array response is evaluated at the actual subcarrier frequency rather
than the carrier, so beams formed for the band center drift (squint) toward
the band edges. Delay-domain taps use a raised-cosine pulse sampled at the
system rate; per-subcarrier matrices are the DFT of the tap sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SystemConfig


@dataclass(frozen=True)
class ClusterParams:
    """One propagation cluster: complex gain, delay, arrival/departure angles."""

    gain: complex
    delay_s: float
    aoa_rad: float
    aod_rad: float


@dataclass(frozen=True)
class ChannelRealization:
    """Cluster draw plus the per-subcarrier channel matrices built from it."""

    clusters: tuple[ClusterParams, ...]
    subcarrier_channels: np.ndarray  # (K, n_rx, n_tx) complex

    @property
    def n_subcarriers(self) -> int:
        return self.subcarrier_channels.shape[0]


def subcarrier_frequency(k: int, cfg: SystemConfig) -> float:
    """Absolute frequency of subcarrier ``k`` (1-based), symmetric about the carrier."""
    if not 1 <= k <= cfg.n_subcarriers:
        raise IndexError(
            f"subcarrier index {k} outside 1..{cfg.n_subcarriers}"
        )
    offset = k - (cfg.n_subcarriers + 1) / 2.0
    return cfg.carrier_hz + offset * cfg.bandwidth_hz / cfg.n_subcarriers


def steering_vector(
    angle_rad: float,
    freq_hz: float,
    n_antennas: int,
    spacing_wavelengths: float = 0.5,
    carrier_hz: float = 60e9,
) -> np.ndarray:
    """Uniform-linear-array response at an arbitrary in-band frequency.

    Element n carries phase ``-2 pi n * spacing * sin(angle) * f / f_c``; the
    spacing is in carrier wavelengths, which is what makes the phase slope
    scale with ``f / f_c`` and the beam squint off the design angle.
    """
    if n_antennas < 1:
        raise ValueError("n_antennas must be positive")
    if freq_hz <= 0 or carrier_hz <= 0:
        raise ValueError("frequencies must be positive")
    psi = spacing_wavelengths * np.sin(angle_rad)
    n = np.arange(n_antennas)
    return np.exp(-2j * np.pi * n * psi * (freq_hz / carrier_hz))


def pulse_shape(t, sample_period_s: float, rolloff: float = 1.0):
    """Raised-cosine pulse ``sinc(t/T) cos(pi b t/T) / (1 - (2 b t/T)^2)``.

    The removable singularity at ``|t| = T / (2 b)`` evaluates to
    ``(pi / 4) sinc(1 / (2 b))``. Accepts scalars or arrays.
    """
    if sample_period_s <= 0:
        raise ValueError("sample_period_s must be positive")
    if not 0 < rolloff <= 1:
        raise ValueError("rolloff must lie in (0, 1]")
    x = np.asarray(t, dtype=float) / sample_period_s
    scaled = 2.0 * rolloff * np.abs(x)
    singular = np.abs(scaled - 1.0) <= 1e-9
    denom = np.where(singular, 1.0, 1.0 - scaled**2)
    vals = np.sinc(x) * np.cos(np.pi * rolloff * x) / denom
    vals = np.where(singular, (np.pi / 4.0) * np.sinc(1.0 / (2.0 * rolloff)), vals)
    if np.isscalar(t):
        return float(vals)
    return vals


def draw_clusters(rng: np.random.Generator, cfg: SystemConfig) -> tuple[ClusterParams, ...]:
    """Sample cluster parameters: unit-variance complex normal gains, delays
    uniform on [0, (D-1) T_s], angles uniform on [0, 2 pi)."""
    n = cfg.n_clusters
    gains = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)
    delays = rng.uniform(0.0, (cfg.cp_length - 1) * cfg.sample_period_s, n)
    aoas = rng.uniform(0.0, 2.0 * np.pi, n)
    aods = rng.uniform(0.0, 2.0 * np.pi, n)
    return tuple(
        ClusterParams(complex(g), float(d), float(a), float(b))
        for g, d, a, b in zip(gains, delays, aoas, aods)
    )


def _cluster_arrays(clusters):
    gains = np.array([c.gain for c in clusters], dtype=complex)
    delays = np.array([c.delay_s for c in clusters], dtype=float)
    aoas = np.array([c.aoa_rad for c in clusters], dtype=float)
    aods = np.array([c.aod_rad for c in clusters], dtype=float)
    return gains, delays, aoas, aods


def _response_matrix(angles, freq_hz, n_antennas, spacing, carrier_hz):
    # Columns are steering vectors, one per cluster: (n_antennas, n_clusters).
    psi = spacing * np.sin(angles)
    n = np.arange(n_antennas)[:, None]
    return np.exp(-2j * np.pi * n * psi[None, :] * (freq_hz / carrier_hz))


def channel_tap(clusters, d: int, freq_hz: float, cfg: SystemConfig) -> np.ndarray:
    """Delay-domain tap ``d`` of the channel evaluated at ``freq_hz``."""
    if not 0 <= d < cfg.cp_length:
        raise IndexError(f"tap index {d} outside 0..{cfg.cp_length - 1}")
    gains, delays, aoas, aods = _cluster_arrays(clusters)
    weights = gains * pulse_shape(d * cfg.sample_period_s - delays, cfg.sample_period_s, cfg.rolloff)
    ar = _response_matrix(aoas, freq_hz, cfg.n_rx, cfg.antenna_spacing_wavelengths, cfg.carrier_hz)
    at = _response_matrix(aods, freq_hz, cfg.n_tx, cfg.antenna_spacing_wavelengths, cfg.carrier_hz)
    return (ar * weights[None, :]) @ at.conj().T


def subcarrier_channels(clusters, cfg: SystemConfig, normalize: bool = False) -> np.ndarray:
    """Per-subcarrier channel matrices, shape (K, n_rx, n_tx).

    Subcarrier k is the K-point DFT of the tap sequence; array responses are
    evaluated at each subcarrier's own absolute frequency. With
    ``normalize=True`` every matrix is scaled by sqrt(n_tx * n_rx / n_clusters).
    """
    gains, delays, aoas, aods = _cluster_arrays(clusters)
    k_count = cfg.n_subcarriers
    taps = np.arange(cfg.cp_length)
    # (n_clusters, D): pulse evaluated at tap instants minus cluster delays.
    pulses = pulse_shape(
        taps[None, :] * cfg.sample_period_s - delays[:, None],
        cfg.sample_period_s,
        cfg.rolloff,
    )
    out = np.empty((k_count, cfg.n_rx, cfg.n_tx), dtype=complex)
    scale = np.sqrt(cfg.n_tx * cfg.n_rx / cfg.n_clusters) if normalize else 1.0
    for k in range(1, k_count + 1):
        phase = np.exp(-2j * np.pi * k * taps / k_count)
        cluster_weights = gains * (pulses @ phase)
        fk = subcarrier_frequency(k, cfg)
        ar = _response_matrix(aoas, fk, cfg.n_rx, cfg.antenna_spacing_wavelengths, cfg.carrier_hz)
        at = _response_matrix(aods, fk, cfg.n_tx, cfg.antenna_spacing_wavelengths, cfg.carrier_hz)
        out[k - 1] = scale * (ar * cluster_weights[None, :]) @ at.conj().T
    return out


def realize_channel(
    cfg: SystemConfig, rng: np.random.Generator, normalize: bool = False
) -> ChannelRealization:
    """Draw one cluster realization and build its subcarrier matrices."""
    clusters = draw_clusters(rng, cfg)
    return ChannelRealization(clusters, subcarrier_channels(clusters, cfg, normalize))


def beam_pattern(
    focus_rad: float,
    design_freq_hz: float,
    eval_freq_hz: float,
    n_antennas: int,
    angle_grid: np.ndarray,
    spacing_wavelengths: float = 0.5,
    carrier_hz: float = 60e9,
) -> np.ndarray:
    """Normalized array gain of a beam designed at one frequency, observed at another.

    Returns ``|a(focus, f_design)^H a(angle, f_eval)| / n_antennas`` over the
    grid; the peak sits at 1.0 when the two frequencies coincide and shifts
    and shrinks as they separate.
    """
    angle_grid = np.asarray(angle_grid, dtype=float)
    ref = steering_vector(focus_rad, design_freq_hz, n_antennas, spacing_wavelengths, carrier_hz)
    resp = _response_matrix(
        angle_grid, eval_freq_hz, n_antennas, spacing_wavelengths, carrier_hz
    )
    return np.abs(resp.conj().T @ ref) / n_antennas
