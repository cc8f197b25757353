"""Seeded Monte Carlo experiment driver.

One experiment is a grid of (axis value, trial) cells. Every cell draws its
own channel from a child generator derived as
``SeedSequence([seed, axis_index, trial_index, stream])``, so results are
reproducible for any subset of cells and all schemes inside a cell share the
same channel realization (paired comparisons). Scheme-specific randomness
uses a per-scheme stream index, so adding or removing schemes never shifts
the draws of the others.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channel import beam_pattern, realize_channel
from .config import SystemConfig, with_axis_value
from .errors import ConfigError, DimensionGuardError
from .power import (
    FULLY_DIGITAL,
    PHASE_SHIFTER_HYBRID,
    SWITCH_HYBRID,
    energy_efficiency,
    total_power_mw,
)
from .plots import svg_line_plot
from .rxbeam import (
    analog_objective,
    effective_covariances,
    mmse_digital_combiner,
    system_spectral_efficiency,
)
from .solvers import (
    MAX_EXHAUSTIVE_BITS,
    default_initial_combiner,
    exhaustive_search,
    pga_aided_tabu,
    ps_baseline_combiner,
    random_combiner,
    tabu_search,
)
from .txbeam import dbf_spectral_efficiency, design_precoders

SCHEMES = ("dbf", "sw-es", "sw-ts", "sw-pga-ts", "sw-random", "ps-baseline")

DEFAULT_SCHEMES = ("dbf", "sw-ts", "sw-pga-ts", "sw-random", "ps-baseline")

AXES = ("snr", "bandwidth", "subcarriers")

DEFAULT_AXIS_VALUES = {
    "snr": tuple(10.0 ** (d / 10.0) for d in (-10, -5, 0, 5, 10, 15, 20)),
    "bandwidth": (0.5e9, 1e9, 2e9, 4e9),
    "subcarriers": (16.0, 32.0, 64.0, 128.0),
}

_SCHEME_ARCHITECTURE = {
    "dbf": FULLY_DIGITAL,
    "sw-es": SWITCH_HYBRID,
    "sw-ts": SWITCH_HYBRID,
    "sw-pga-ts": SWITCH_HYBRID,
    "sw-random": SWITCH_HYBRID,
    "ps-baseline": PHASE_SHIFTER_HYBRID,
}

CSV_HEADER = "scheme,axis,axis_value,trial,se_bps_hz,ee_bps_hz_w,evals,wall_time_s"


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to reproduce one experiment grid."""

    base: SystemConfig = field(default_factory=SystemConfig)
    sweep_axis: str = "snr"
    sweep_values: tuple = ()
    schemes: tuple = DEFAULT_SCHEMES
    n_trials: int = 3
    seed: int = 0
    measure_time: bool = False  # keeps emitted CSVs byte-stable when False

    def __post_init__(self):
        if self.sweep_axis not in AXES:
            raise ConfigError(
                f"sweep_axis must be one of {AXES}, got {self.sweep_axis!r}"
            )
        values = tuple(float(v) for v in self.sweep_values)
        if not values:
            values = DEFAULT_AXIS_VALUES[self.sweep_axis]
        if any(v <= 0 or not np.isfinite(v) for v in values):
            raise ConfigError("sweep values must be positive and finite")
        if self.sweep_axis == "subcarriers" and any(v != int(v) for v in values):
            raise ConfigError("subcarrier counts must be integers")
        object.__setattr__(self, "sweep_values", values)
        schemes = tuple(self.schemes)
        if not schemes:
            raise ConfigError("at least one scheme is required")
        for s in schemes:
            if s not in SCHEMES:
                raise ConfigError(f"unknown scheme {s!r}; choose from {SCHEMES}")
        if len(set(schemes)) != len(schemes):
            raise ConfigError("schemes must not repeat")
        object.__setattr__(self, "schemes", schemes)
        if not isinstance(self.n_trials, int) or self.n_trials < 1:
            raise ConfigError("n_trials must be a positive integer")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        if "sw-es" in schemes:
            bits = self.base.n_rx * self.base.n_rf
            if bits > MAX_EXHAUSTIVE_BITS:
                raise DimensionGuardError(
                    f"sw-es needs n_rx * n_rf <= {MAX_EXHAUSTIVE_BITS}, got {bits}"
                )


@dataclass(frozen=True)
class ResultRow:
    """One (scheme, axis value, trial) measurement."""

    scheme: str
    axis: str
    axis_value: float
    trial: int
    se_bps_hz: float
    ee_bps_hz_w: float
    evals: int
    wall_time_s: float


def _cell_rng(seed: int, axis_idx: int, trial: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence([seed, axis_idx, trial, stream])
    )


def _scheme_stream(scheme: str) -> int:
    # Stream 0 is the channel; schemes get stable per-name streams.
    return 1 + SCHEMES.index(scheme)


def _evaluate_scheme(scheme, cfg, channels, precoders, cov, rng):
    """Returns (se, solver evaluation count) for one scheme in one cell."""
    noise = cfg.noise_power
    shape = (cfg.n_rx, cfg.n_rf)
    if scheme == "dbf":
        return dbf_spectral_efficiency(channels, precoders, noise), 0
    if scheme == "sw-es":
        res = exhaustive_search(cov, noise, shape, cfg.n_streams)
        return res.objective, res.evaluations
    if scheme == "sw-ts":
        start = default_initial_combiner(cfg.n_rx, cfg.n_rf, cfg.n_streams)
        res = tabu_search(cov, noise, start, cfg.n_streams)
        return res.objective, res.evaluations
    if scheme == "sw-pga-ts":
        res = pga_aided_tabu(cov, noise, shape, cfg.n_streams, rng=rng)
        return res.objective, res.evaluations
    if scheme == "sw-random":
        combiner = random_combiner(rng, shape, cfg.n_streams)
        return analog_objective(combiner, cov, noise), 1
    if scheme == "ps-baseline":
        w_rf = ps_baseline_combiner(channels, cfg.n_rf)
        w_bbs = [
            mmse_digital_combiner(w_rf, channels[k], precoders.precoders[k], noise)
            for k in range(cfg.n_subcarriers)
        ]
        se = system_spectral_efficiency(w_rf, w_bbs, channels, precoders, noise)
        return se, 0
    raise ConfigError(f"unknown scheme {scheme!r}")


def run_experiment(spec: ExperimentSpec) -> list[ResultRow]:
    """Run the full (axis value, trial, scheme) grid and return result rows."""
    rows: list[ResultRow] = []
    for axis_idx, value in enumerate(spec.sweep_values):
        cfg = with_axis_value(spec.base, spec.sweep_axis, value)
        for trial in range(spec.n_trials):
            channel_rng = _cell_rng(spec.seed, axis_idx, trial, 0)
            realization = realize_channel(cfg, channel_rng)
            channels = realization.subcarrier_channels
            precoders = design_precoders(channels, cfg)
            cov = effective_covariances(channels, precoders)
            for scheme in spec.schemes:
                scheme_rng = _cell_rng(spec.seed, axis_idx, trial, _scheme_stream(scheme))
                tic = time.perf_counter() if spec.measure_time else 0.0
                se, evals = _evaluate_scheme(
                    scheme, cfg, channels, precoders, cov, scheme_rng
                )
                elapsed = time.perf_counter() - tic if spec.measure_time else 0.0
                power = total_power_mw(
                    _SCHEME_ARCHITECTURE[scheme], cfg.n_rx, cfg.n_rf
                )
                rows.append(
                    ResultRow(
                        scheme=scheme,
                        axis=spec.sweep_axis,
                        axis_value=float(value),
                        trial=trial,
                        se_bps_hz=float(se),
                        ee_bps_hz_w=energy_efficiency(float(se), power),
                        evals=int(evals),
                        wall_time_s=float(elapsed),
                    )
                )
    return rows


def run_snr_sweep(spec: ExperimentSpec) -> list[ResultRow]:
    """Run ``spec`` with the sweep axis pinned to SNR (linear values)."""
    return run_experiment(_pin_axis(spec, "snr"))


def run_bandwidth_sweep(spec: ExperimentSpec) -> list[ResultRow]:
    """Run ``spec`` with the sweep axis pinned to bandwidth (Hz values)."""
    return run_experiment(_pin_axis(spec, "bandwidth"))


def run_subcarrier_sweep(spec: ExperimentSpec) -> list[ResultRow]:
    """Run ``spec`` with the sweep axis pinned to the subcarrier count."""
    return run_experiment(_pin_axis(spec, "subcarriers"))


def _pin_axis(spec: ExperimentSpec, axis: str) -> ExperimentSpec:
    if spec.sweep_axis == axis:
        return spec
    return ExperimentSpec(
        base=spec.base,
        sweep_axis=axis,
        sweep_values=(),
        schemes=spec.schemes,
        n_trials=spec.n_trials,
        seed=spec.seed,
        measure_time=spec.measure_time,
    )


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def emit_csv(rows, path) -> Path:
    """Write rows sorted by (scheme, axis_value, trial); floats at 12 digits."""
    ordered = sorted(rows, key=lambda r: (r.scheme, r.axis_value, r.trial))
    lines = [CSV_HEADER]
    for r in ordered:
        lines.append(
            ",".join(
                (
                    r.scheme,
                    r.axis,
                    _fmt(r.axis_value),
                    str(r.trial),
                    _fmt(r.se_bps_hz),
                    _fmt(r.ee_bps_hz_w),
                    str(r.evals),
                    _fmt(r.wall_time_s),
                )
            )
        )
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return out


def emit_summary_figure(rows, path, ylabel: str = "spectral efficiency (bits/s/Hz)") -> Path:
    """Line plot of per-scheme mean SE versus the sweep axis."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to plot")
    axis = rows[0].axis
    series = []
    for scheme in sorted({r.scheme for r in rows}):
        values = sorted({r.axis_value for r in rows if r.scheme == scheme})
        means = [
            float(np.mean([r.se_bps_hz for r in rows if r.scheme == scheme and r.axis_value == v]))
            for v in values
        ]
        series.append((scheme, values, means))
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    return svg_line_plot(series, out, title=f"mean SE vs {axis}", xlabel=axis, ylabel=ylabel)


def emit_beam_pattern_figure(
    n_antennas: int,
    focus_rad: float,
    eval_freqs_hz,
    out_dir,
    design_freq_hz: float | None = None,
    carrier_hz: float = 60e9,
    spacing_wavelengths: float = 0.5,
    n_points: int = 1001,
    stem: str = "beam_pattern",
) -> dict:
    """Squint illustration: one beam, observed at several frequencies.

    Writes ``<stem>.svg`` and a long-format CSV companion
    (``freq_hz,angle_rad,gain``; ``n_points`` rows per frequency) into
    ``out_dir`` and returns their paths.
    """
    if design_freq_hz is None:
        design_freq_hz = carrier_hz
    eval_freqs_hz = [float(f) for f in eval_freqs_hz]
    if not eval_freqs_hz:
        raise ConfigError("at least one evaluation frequency is required")
    # Interior grid: endpoints of the open interval (-pi/2, pi/2) excluded.
    grid = np.linspace(-np.pi / 2.0, np.pi / 2.0, n_points + 2)[1:-1]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    series = []
    csv_lines = ["freq_hz,angle_rad,gain"]
    for freq in eval_freqs_hz:
        gains = beam_pattern(
            focus_rad,
            design_freq_hz,
            freq,
            n_antennas,
            grid,
            spacing_wavelengths,
            carrier_hz,
        )
        series.append((f"{freq / 1e9:.6g} GHz", grid, gains))
        for a, g in zip(grid, gains):
            csv_lines.append(f"{_fmt(freq)},{_fmt(a)},{_fmt(g)}")
    svg_path = svg_line_plot(
        series,
        out_dir / f"{stem}.svg",
        title="beam pattern across the band",
        xlabel="angle (rad)",
        ylabel="normalized gain",
    )
    csv_path = out_dir / f"{stem}.csv"
    csv_path.write_text("\n".join(csv_lines) + "\n", encoding="utf-8")
    return {"svg": svg_path, "csv": csv_path}


@dataclass(frozen=True)
class OracleRow:
    """Near-optimality summary of one search against exhaustive enumeration."""

    scheme: str
    n_trials: int
    mean_ratio: float
    min_ratio: float
    frac_within_5pct: float


def oracle_compare(spec: ExperimentSpec) -> list[OracleRow]:
    """Compare tabu-based searches against the exhaustive optimum.

    Uses the first sweep value of ``spec`` (the dimensions must pass the
    enumeration guard) and reports, per search, the mean and minimum
    objective ratio and the fraction of trials with ratio >= 0.95.
    """
    cfg = with_axis_value(spec.base, spec.sweep_axis, spec.sweep_values[0])
    bits = cfg.n_rx * cfg.n_rf
    if bits > MAX_EXHAUSTIVE_BITS:
        raise DimensionGuardError(
            f"oracle comparison needs n_rx * n_rf <= {MAX_EXHAUSTIVE_BITS}, got {bits}"
        )
    searches = ("sw-ts", "sw-pga-ts")
    ratios = {s: [] for s in searches}
    for trial in range(spec.n_trials):
        channel_rng = _cell_rng(spec.seed, 0, trial, 0)
        realization = realize_channel(cfg, channel_rng)
        channels = realization.subcarrier_channels
        precoders = design_precoders(channels, cfg)
        cov = effective_covariances(channels, precoders)
        best = exhaustive_search(cov, cfg.noise_power, (cfg.n_rx, cfg.n_rf), cfg.n_streams)
        for scheme in searches:
            rng = _cell_rng(spec.seed, 0, trial, _scheme_stream(scheme))
            se, _ = _evaluate_scheme(scheme, cfg, channels, precoders, cov, rng)
            ratios[scheme].append(se / best.objective if best.objective > 0 else 1.0)
    out = []
    for scheme in searches:
        r = np.asarray(ratios[scheme])
        out.append(
            OracleRow(
                scheme=scheme,
                n_trials=spec.n_trials,
                mean_ratio=float(r.mean()),
                min_ratio=float(r.min()),
                frac_within_5pct=float(np.mean(r >= 0.95)),
            )
        )
    return out


def emit_oracle_csv(rows, path) -> Path:
    """Write oracle-comparison summaries as CSV."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = ["scheme,n_trials,mean_ratio,min_ratio,frac_within_5pct"]
    for r in rows:
        lines.append(
            f"{r.scheme},{r.n_trials},{_fmt(r.mean_ratio)},{_fmt(r.min_ratio)},"
            f"{_fmt(r.frac_within_5pct)}"
        )
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return out
