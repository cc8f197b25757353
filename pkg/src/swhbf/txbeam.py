"""Transmit-side design: per-subcarrier eigenbeams with a single water-filling
power allocation shared across the whole band, plus the fully digital
spectral-efficiency upper bound used as a benchmark."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SystemConfig

_LN2 = np.log(2.0)


@dataclass(frozen=True)
class PrecoderSet:
    """Per-subcarrier precoders with their power loads and the water level."""

    precoders: np.ndarray  # (K, n_tx, n_streams) complex, columns scaled by sqrt(power)
    powers: np.ndarray  # (K, n_streams) real, non-negative
    water_level: float

    @property
    def n_subcarriers(self) -> int:
        return self.precoders.shape[0]


def water_fill(gains, budget: float, noise_power: float = 1.0):
    """Exact KKT water-filling over parallel channels.

    Solves ``max sum log(1 + p_i g_i / noise)`` s.t. ``sum p_i = budget``,
    ``p_i >= 0`` by sorting the breakpoints ``noise / g_i`` and picking the
    unique active-set size whose water level is consistent.

    Args:
        gains: positive channel power gains, any shape (flattened).
        budget: total power, must be positive.
        noise_power: per-channel noise variance.

    Returns:
        ``(powers, level)`` with ``powers`` matching the flattened input and
        ``powers.sum() == budget`` up to round-off.
    """
    gains = np.asarray(gains, dtype=float).ravel()
    if gains.size == 0:
        raise ValueError("water_fill needs at least one gain")
    if np.any(gains <= 0) or not np.all(np.isfinite(gains)):
        raise ValueError("gains must be positive and finite")
    if budget <= 0:
        raise ValueError("budget must be positive")
    if noise_power <= 0:
        raise ValueError("noise_power must be positive")

    floors = noise_power / gains
    order = np.argsort(floors, kind="stable")
    sorted_floors = floors[order]
    candidates = (budget + np.cumsum(sorted_floors)) / np.arange(1, gains.size + 1)
    active = candidates > sorted_floors
    m_star = int(np.nonzero(active)[0][-1]) + 1
    level = float(candidates[m_star - 1])
    sorted_powers = np.zeros_like(sorted_floors)
    sorted_powers[:m_star] = level - sorted_floors[:m_star]
    powers = np.empty_like(sorted_powers)
    powers[order] = sorted_powers
    return powers, level


def design_precoders(channels: np.ndarray, cfg: SystemConfig) -> PrecoderSet:
    """Top-``n_streams`` right singular vectors per subcarrier, with one joint
    water-filling over all K * n_streams eigenmode gains.

    Modes with zero singular value are excluded from the allocation and get
    zero power. An all-zero channel stack yields zero precoders and level 0.
    """
    channels = np.asarray(channels, dtype=complex)
    if channels.ndim != 3:
        raise ValueError(f"expected (K, n_rx, n_tx) channel stack, got {channels.shape}")
    k_count = channels.shape[0]
    ns = cfg.n_streams
    _, s, vh = np.linalg.svd(channels)
    s_top = s[:, :ns]  # (K, n_streams)
    eig_gains = s_top**2
    active = eig_gains > 0.0
    powers = np.zeros((k_count, ns))
    if np.any(active):
        flat_powers, level = water_fill(
            eig_gains[active], cfg.power_budget, cfg.noise_power
        )
        powers[active] = flat_powers
    else:
        level = 0.0
    v_top = vh[:, :ns, :].conj().transpose(0, 2, 1)  # (K, n_tx, n_streams)
    precoders = v_top * np.sqrt(powers)[:, None, :]
    return PrecoderSet(precoders, powers, level)


def dbf_spectral_efficiency(
    channels: np.ndarray, precoders, noise_power: float
) -> float:
    """Band-averaged log-det rate of an unconstrained (fully digital) receiver.

    ``(1/K) sum_k log2 det(I + F_k^H H_k^H H_k F_k / noise)``; for eigenbeam
    precoders this reduces to the water-filling rate.
    """
    if noise_power <= 0:
        raise ValueError("noise_power must be positive")
    channels = np.asarray(channels, dtype=complex)
    f = precoders.precoders if isinstance(precoders, PrecoderSet) else np.asarray(precoders)
    effective = channels @ f  # (K, n_rx, n_streams)
    gram = np.einsum("kim,kip->kmp", effective.conj(), effective)
    w = np.linalg.eigvalsh(gram)
    w = np.clip(w, 0.0, None)
    k_count = channels.shape[0]
    return float(np.sum(np.log1p(w / noise_power)) / _LN2 / k_count)
