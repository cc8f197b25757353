"""Receiver power-consumption models and energy efficiency.

Component draws default to typical millimeter-wave figures (milliwatts):
LNA 39, splitter/combiner 19.5, phase shifter 30, switch 5, mixer 19, local
oscillator 5, low-pass filter 14, baseband amplifier 5, ADC 240.
"""

from __future__ import annotations

from dataclasses import dataclass

FULLY_DIGITAL = "fully-digital"
PHASE_SHIFTER_HYBRID = "phase-shifter-hybrid"
SWITCH_HYBRID = "switch-hybrid"

ARCHITECTURES = (FULLY_DIGITAL, PHASE_SHIFTER_HYBRID, SWITCH_HYBRID)


@dataclass(frozen=True)
class DevicePowers:
    """Per-component power draw in milliwatts."""

    lna_mw: float = 39.0
    splitter_mw: float = 19.5
    combiner_mw: float = 19.5
    phase_shifter_mw: float = 30.0
    switch_mw: float = 5.0
    mixer_mw: float = 19.0
    lo_mw: float = 5.0
    lpf_mw: float = 14.0
    bb_amp_mw: float = 5.0
    adc_mw: float = 240.0

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")


def rf_chain_power_mw(powers: DevicePowers | None = None) -> float:
    """One RF chain: mixer + local oscillator + low-pass filter + baseband amp."""
    p = powers if powers is not None else DevicePowers()
    return p.mixer_mw + p.lo_mw + p.lpf_mw + p.bb_amp_mw


def total_power_mw(
    architecture: str,
    n_rx: int,
    n_rf: int = 1,
    powers: DevicePowers | None = None,
) -> float:
    """Total receiver front-end power in milliwatts.

    Fully digital: one LNA, RF chain, and ADC pair per antenna. Hybrid
    architectures: per antenna an LNA, a splitter, and one phase shifter or
    switch per chain; per chain an RF chain, a combiner, and an ADC pair.
    """
    p = powers if powers is not None else DevicePowers()
    if n_rx < 1:
        raise ValueError("n_rx must be >= 1")
    chain = rf_chain_power_mw(p)
    if architecture == FULLY_DIGITAL:
        return n_rx * (p.lna_mw + chain + 2.0 * p.adc_mw)
    if architecture not in (PHASE_SHIFTER_HYBRID, SWITCH_HYBRID):
        raise ValueError(f"unknown architecture {architecture!r}")
    if n_rf < 1:
        raise ValueError("n_rf must be >= 1 for hybrid architectures")
    per_element = p.phase_shifter_mw if architecture == PHASE_SHIFTER_HYBRID else p.switch_mw
    antenna_stage = n_rx * (p.lna_mw + p.splitter_mw + n_rf * per_element)
    chain_stage = n_rf * (chain + p.combiner_mw + 2.0 * p.adc_mw)
    return antenna_stage + chain_stage


def energy_efficiency(se_bps_hz: float, total_power_mw_: float) -> float:
    """Spectral efficiency per watt, in bits/s/Hz/W."""
    if total_power_mw_ <= 0:
        raise ZeroDivisionError("total power must be positive")
    return se_bps_hz / (total_power_mw_ / 1000.0)
