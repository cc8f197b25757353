"""Scenario configuration for wideband multi-carrier link simulations."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ConfigError

SPEED_OF_LIGHT_M_S = 299792458.0


@dataclass(frozen=True)
class SystemConfig:
    """All scalar parameters describing one simulated link.

    Frequencies are in Hz, powers in the same (arbitrary) unit as
    ``noise_power``, angles in radians. ``snr_linear`` is the ratio of the
    total transmit budget to ``n_subcarriers * noise_power``, so the budget
    itself is a derived quantity.
    """

    n_tx: int = 16
    n_rx: int = 8
    n_rf: int = 2
    n_streams: int = 2
    n_subcarriers: int = 64
    bandwidth_hz: float = 1e9
    carrier_hz: float = 60e9
    n_clusters: int = 10
    cp_length: int | None = None  # channel taps; defaults to n_subcarriers // 4
    rolloff: float = 1.0
    antenna_spacing_wavelengths: float = 0.5
    snr_linear: float = 10.0
    noise_power: float = 1.0

    def __post_init__(self):
        if self.cp_length is None:
            object.__setattr__(self, "cp_length", max(1, self.n_subcarriers // 4))
        ints = {
            "n_tx": self.n_tx,
            "n_rx": self.n_rx,
            "n_rf": self.n_rf,
            "n_streams": self.n_streams,
            "n_subcarriers": self.n_subcarriers,
            "n_clusters": self.n_clusters,
            "cp_length": self.cp_length,
        }
        for name, value in ints.items():
            if not isinstance(value, (int,)) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if not (self.n_streams <= self.n_rf <= self.n_rx):
            raise ConfigError(
                "stream/chain counts must satisfy "
                f"n_streams <= n_rf <= n_rx, got {self.n_streams} <= {self.n_rf} <= {self.n_rx}"
            )
        if self.n_streams > self.n_tx:
            raise ConfigError("n_streams cannot exceed n_tx")
        if self.bandwidth_hz <= 0:
            raise ConfigError("bandwidth_hz must be positive")
        if self.carrier_hz <= self.bandwidth_hz / 2:
            raise ConfigError("carrier_hz must exceed half the bandwidth")
        if not 0 < self.rolloff <= 1:
            raise ConfigError("rolloff must lie in (0, 1]")
        if self.antenna_spacing_wavelengths <= 0:
            raise ConfigError("antenna_spacing_wavelengths must be positive")
        if self.snr_linear <= 0:
            raise ConfigError("snr_linear must be positive")
        if self.noise_power <= 0:
            raise ConfigError("noise_power must be positive")

    @property
    def sample_period_s(self) -> float:
        return 1.0 / self.bandwidth_hz

    @property
    def power_budget(self) -> float:
        """Total transmit power implied by the SNR definition."""
        return self.n_subcarriers * self.snr_linear * self.noise_power

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT_M_S / self.carrier_hz


def small_search_config(**overrides) -> SystemConfig:
    """Dimensions small enough for exhaustive combiner enumeration."""
    base = dict(
        n_tx=8, n_rx=4, n_rf=2, n_streams=2, n_subcarriers=4, n_clusters=10
    )
    base.update(overrides)
    return SystemConfig(**base)


def standard_config(**overrides) -> SystemConfig:
    """Mid-size reference scenario (16x8 array, 64 subcarriers, 1 GHz)."""
    return SystemConfig(**overrides) if overrides else SystemConfig()


def large_array_config(**overrides) -> SystemConfig:
    """Large-array scenario (64x64, four chains)."""
    base = dict(n_tx=64, n_rx=64, n_rf=4, n_streams=4)
    base.update(overrides)
    return SystemConfig(**base)


PRESETS = {
    "small-search": small_search_config,
    "standard": standard_config,
    "large-array": large_array_config,
}


def with_axis_value(cfg: SystemConfig, axis: str, value) -> SystemConfig:
    """Return a copy of ``cfg`` with one sweep axis pinned to ``value``.

    Axes: ``snr`` (linear), ``bandwidth`` (Hz; sample period follows),
    ``subcarriers`` (tap count is re-derived as K // 4).
    """
    if axis == "snr":
        return replace(cfg, snr_linear=float(value))
    if axis == "bandwidth":
        return replace(cfg, bandwidth_hz=float(value))
    if axis == "subcarriers":
        k = int(value)
        return replace(cfg, n_subcarriers=k, cp_length=max(1, k // 4))
    raise ConfigError(f"unknown sweep axis {axis!r}")
