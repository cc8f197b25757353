import numpy as np
import numpy.testing as npt
import pytest

from swhbf.channel import (
    beam_pattern,
    channel_tap,
    draw_clusters,
    pulse_shape,
    realize_channel,
    steering_vector,
    subcarrier_channels,
    subcarrier_frequency,
)
from swhbf.config import SystemConfig


def test_subcarrier_frequencies_are_symmetric_about_carrier():
    cfg = SystemConfig()  # 64 subcarriers, 60 GHz carrier, 1 GHz band
    assert subcarrier_frequency(1, cfg) == 59.5078125e9
    assert subcarrier_frequency(64, cfg) == 60.4921875e9
    for k in range(1, 33):
        lo = subcarrier_frequency(k, cfg)
        hi = subcarrier_frequency(65 - k, cfg)
        npt.assert_allclose(lo + hi, 2.0 * cfg.carrier_hz, rtol=1e-15)
    # Spacing is exactly B / K.
    diffs = np.diff([subcarrier_frequency(k, cfg) for k in range(1, 65)])
    npt.assert_allclose(diffs, cfg.bandwidth_hz / cfg.n_subcarriers, rtol=1e-12)


def test_subcarrier_frequency_bounds():
    cfg = SystemConfig()
    with pytest.raises(IndexError):
        subcarrier_frequency(0, cfg)
    with pytest.raises(IndexError):
        subcarrier_frequency(65, cfg)


def test_steering_vector_basics():
    v = steering_vector(0.3, 60e9, 8)
    assert v.shape == (8,)
    npt.assert_allclose(np.abs(v), 1.0, rtol=1e-15)
    assert v[0] == 1.0 + 0.0j
    # At broadside every element is in phase.
    npt.assert_allclose(steering_vector(0.0, 58e9, 8), np.ones(8), rtol=1e-15)


def test_steering_vector_phase_scales_with_frequency():
    # The per-element phase slope at f is (f / carrier) times the slope at carrier.
    theta, n = 0.4, 6
    at_carrier = steering_vector(theta, 60e9, n, carrier_hz=60e9)
    at_edge = steering_vector(theta, 61.5e9, n, carrier_hz=60e9)
    slope_c = np.angle(at_carrier[1] / at_carrier[0])
    slope_e = np.angle(at_edge[1] / at_edge[0])
    npt.assert_allclose(slope_e / slope_c, 61.5 / 60.0, rtol=1e-12)


def test_steering_vector_rejects_bad_args():
    with pytest.raises(ValueError):
        steering_vector(0.1, 60e9, 0)
    with pytest.raises(ValueError):
        steering_vector(0.1, -1.0, 4)


def test_pulse_shape_reference_points():
    ts = 1e-9
    assert pulse_shape(0.0, ts) == 1.0
    # Removable singularity at t = Ts / (2 beta): (pi/4) sinc(1 / (2 beta)).
    npt.assert_allclose(pulse_shape(ts / 2, ts), 0.5, rtol=1e-12)
    npt.assert_allclose(pulse_shape(-ts / 2, ts), 0.5, rtol=1e-12)
    beta = 0.5
    expected = (np.pi / 4.0) * np.sinc(1.0 / (2.0 * beta))
    npt.assert_allclose(pulse_shape(ts / (2 * beta), ts, beta), expected, rtol=1e-12)
    # Nyquist zeros at nonzero integer multiples of the sample period.
    for m in (1, 2, 3, -2):
        assert abs(pulse_shape(m * ts, ts)) < 1e-15


def test_pulse_shape_array_and_scalar_agree():
    ts = 0.5e-9
    t = np.array([-ts, 0.0, ts / 2, 0.3e-9])
    arr = pulse_shape(t, ts)
    assert arr.shape == t.shape
    for i, ti in enumerate(t):
        npt.assert_allclose(arr[i], pulse_shape(float(ti), ts), rtol=1e-15)


def test_pulse_shape_rejects_bad_args():
    with pytest.raises(ValueError):
        pulse_shape(0.0, -1.0)
    with pytest.raises(ValueError):
        pulse_shape(0.0, 1.0, rolloff=0.0)
    with pytest.raises(ValueError):
        pulse_shape(0.0, 1.0, rolloff=1.5)


def test_draw_clusters_ranges_and_determinism():
    cfg = SystemConfig()
    clusters = draw_clusters(np.random.default_rng(11), cfg)
    assert len(clusters) == cfg.n_clusters
    max_delay = (cfg.cp_length - 1) * cfg.sample_period_s
    for c in clusters:
        assert 0.0 <= c.delay_s <= max_delay
        assert 0.0 <= c.aoa_rad < 2.0 * np.pi
        assert 0.0 <= c.aod_rad < 2.0 * np.pi
    again = draw_clusters(np.random.default_rng(11), cfg)
    assert clusters == again


def test_cluster_gains_have_unit_variance():
    cfg = SystemConfig(n_clusters=4000)
    clusters = draw_clusters(np.random.default_rng(5), cfg)
    gains = np.array([c.gain for c in clusters])
    assert abs(np.mean(np.abs(gains) ** 2) - 1.0) < 0.1


def test_channel_tap_matches_manual_sum():
    cfg = SystemConfig(n_tx=3, n_rx=2, n_rf=2, n_streams=2, n_subcarriers=8, n_clusters=3)
    clusters = draw_clusters(np.random.default_rng(2), cfg)
    freq = subcarrier_frequency(5, cfg)
    d = 1
    expected = np.zeros((cfg.n_rx, cfg.n_tx), dtype=complex)
    for c in clusters:
        ar = steering_vector(
            c.aoa_rad, freq, cfg.n_rx, cfg.antenna_spacing_wavelengths, cfg.carrier_hz
        )
        at = steering_vector(
            c.aod_rad, freq, cfg.n_tx, cfg.antenna_spacing_wavelengths, cfg.carrier_hz
        )
        p = pulse_shape(d * cfg.sample_period_s - c.delay_s, cfg.sample_period_s, cfg.rolloff)
        expected += c.gain * p * np.outer(ar, at.conj())
    npt.assert_allclose(channel_tap(clusters, d, freq, cfg), expected, atol=1e-12)
    with pytest.raises(IndexError):
        channel_tap(clusters, cfg.cp_length, freq, cfg)


def test_subcarrier_channels_equal_dft_of_taps():
    # The per-subcarrier matrix must be the K-point DFT of the tap sequence
    # evaluated at that subcarrier's own frequency.
    cfg = SystemConfig(n_tx=4, n_rx=3, n_rf=2, n_streams=2, n_subcarriers=8, n_clusters=5)
    clusters = draw_clusters(np.random.default_rng(9), cfg)
    built = subcarrier_channels(clusters, cfg)
    assert built.shape == (8, 3, 4)
    for k in range(1, cfg.n_subcarriers + 1):
        fk = subcarrier_frequency(k, cfg)
        expected = np.zeros((cfg.n_rx, cfg.n_tx), dtype=complex)
        for d in range(cfg.cp_length):
            expected += channel_tap(clusters, d, fk, cfg) * np.exp(
                -2j * np.pi * k * d / cfg.n_subcarriers
            )
        npt.assert_allclose(built[k - 1], expected, atol=1e-10)


def test_subcarrier_channels_normalization_flag():
    cfg = SystemConfig(n_tx=4, n_rx=3, n_rf=2, n_streams=2, n_subcarriers=4, n_clusters=5)
    clusters = draw_clusters(np.random.default_rng(3), cfg)
    plain = subcarrier_channels(clusters, cfg)
    scaled = subcarrier_channels(clusters, cfg, normalize=True)
    factor = np.sqrt(cfg.n_tx * cfg.n_rx / cfg.n_clusters)
    npt.assert_allclose(scaled, factor * plain, rtol=1e-12)


def test_realize_channel_is_reproducible():
    cfg = SystemConfig(n_subcarriers=8)
    a = realize_channel(cfg, np.random.default_rng(123))
    b = realize_channel(cfg, np.random.default_rng(123))
    npt.assert_array_equal(a.subcarrier_channels, b.subcarrier_channels)
    assert a.clusters == b.clusters
    assert a.n_subcarriers == 8


def test_beam_pattern_peaks_at_focus_on_design_frequency():
    grid = np.linspace(-np.pi / 2, np.pi / 2, 1003)[1:-1]
    gains = beam_pattern(np.pi / 6, 60e9, 60e9, 32, grid)
    assert gains.shape == grid.shape
    assert np.all(gains <= 1.0 + 1e-12)
    peak = grid[np.argmax(gains)]
    assert abs(peak - np.pi / 6) <= grid[1] - grid[0]
    npt.assert_allclose(
        beam_pattern(np.pi / 6, 60e9, 60e9, 32, np.array([np.pi / 6]))[0], 1.0, rtol=1e-12
    )


def test_beam_pattern_squints_toward_predicted_angle():
    # Observed at f != f_design the peak moves to sin(angle) = (f_d / f) sin(focus).
    grid = np.linspace(-np.pi / 2, np.pi / 2, 2001)
    gains = beam_pattern(np.pi / 6, 60e9, 62e9, 64, grid)
    peak = grid[np.argmax(gains)]
    npt.assert_allclose(np.sin(peak), (60.0 / 62.0) * 0.5, atol=2e-3)
