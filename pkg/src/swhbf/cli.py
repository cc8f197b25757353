"""Command-line interface.

Subcommands: ``simulate`` (sweep axis taken from the config), dedicated
``sweep-bandwidth`` / ``sweep-subcarriers`` runs, the ``beampattern``
squint illustration, and ``oracle-compare`` against exhaustive enumeration.

Exit codes: 0 success, 2 configuration error, 3 dimension guard, 4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .config import SystemConfig
from .errors import ConfigError, DimensionGuardError
from .harness import (
    AXES,
    DEFAULT_SCHEMES,
    ExperimentSpec,
    emit_beam_pattern_figure,
    emit_csv,
    emit_oracle_csv,
    emit_summary_figure,
    oracle_compare,
    run_experiment,
)

_SYSTEM_KEYS = {f.name for f in dataclasses.fields(SystemConfig)}
_EXPERIMENT_KEYS = {"axis", "values", "schemes", "trials", "seed"}


def _load_config(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
    unknown = set(data) - {"system", "experiment"}
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    return data


def _system_from_table(table: dict) -> SystemConfig:
    table = dict(table)
    snr_db = table.pop("snr_db", None)
    unknown = set(table) - _SYSTEM_KEYS
    if unknown:
        raise ConfigError(f"unknown [system] keys: {sorted(unknown)}")
    if snr_db is not None:
        if "snr_linear" in table:
            raise ConfigError("specify snr_db or snr_linear, not both")
        table["snr_linear"] = 10.0 ** (float(snr_db) / 10.0)
    try:
        return SystemConfig(**table)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_schemes(text: str) -> tuple:
    return tuple(s.strip() for s in text.split(",") if s.strip())


def _parse_values(text: str) -> tuple:
    try:
        return tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise ConfigError(f"bad sweep values {text!r}: {exc}") from exc


def _build_spec(args, axis_override: str | None, default_system: SystemConfig | None = None):
    data = _load_config(args.config) if args.config else {}
    system = (
        _system_from_table(data["system"])
        if "system" in data
        else (default_system or SystemConfig())
    )
    exp = dict(data.get("experiment", {}))
    unknown = set(exp) - _EXPERIMENT_KEYS
    if unknown:
        raise ConfigError(f"unknown [experiment] keys: {sorted(unknown)}")

    config_axis = exp.get("axis", "snr")
    if config_axis not in AXES:
        raise ConfigError(f"experiment axis must be one of {AXES}, got {config_axis!r}")
    axis = axis_override or config_axis

    values: tuple = ()
    if getattr(args, "values", None):
        values = _parse_values(args.values)
    elif "values" in exp and axis == config_axis:
        values = tuple(float(v) for v in exp["values"])

    schemes = DEFAULT_SCHEMES
    if "schemes" in exp:
        schemes = tuple(exp["schemes"])
    if args.schemes:
        schemes = _parse_schemes(args.schemes)

    trials = args.trials if args.trials is not None else int(exp.get("trials", 3))
    seed = args.seed if args.seed is not None else int(exp.get("seed", 0))

    return ExperimentSpec(
        base=system,
        sweep_axis=axis,
        sweep_values=values,
        schemes=schemes,
        n_trials=trials,
        seed=seed,
        measure_time=bool(getattr(args, "timing", False)),
    )


def _run_and_emit(spec: ExperimentSpec, out_dir) -> int:
    rows = run_experiment(spec)
    out = Path(out_dir)
    csv_path = emit_csv(rows, out / "results.csv")
    fig_path = emit_summary_figure(rows, out / "summary.svg")
    print(f"wrote {csv_path}")
    print(f"wrote {fig_path}")
    return 0


def _cmd_simulate(args) -> int:
    return _run_and_emit(_build_spec(args, axis_override=None), args.out)


def _cmd_sweep_bandwidth(args) -> int:
    return _run_and_emit(_build_spec(args, axis_override="bandwidth"), args.out)


def _cmd_sweep_subcarriers(args) -> int:
    return _run_and_emit(_build_spec(args, axis_override="subcarriers"), args.out)


def _cmd_beampattern(args) -> int:
    system = None
    if args.config:
        data = _load_config(args.config)
        if "system" in data:
            system = _system_from_table(data["system"])
    n_antennas = args.antennas if args.antennas is not None else (
        system.n_rx if system else 16
    )
    carrier = args.carrier_ghz * 1e9 if args.carrier_ghz is not None else (
        system.carrier_hz if system else 60e9
    )
    if args.frequencies_ghz:
        freqs = [f * 1e9 for f in _parse_values(args.frequencies_ghz)]
    else:
        bw = system.bandwidth_hz if system else 1e9
        freqs = [carrier - bw / 2.0, carrier, carrier + bw / 2.0]
    paths = emit_beam_pattern_figure(
        n_antennas,
        math.radians(args.focus_deg),
        freqs,
        args.out,
        carrier_hz=carrier,
        n_points=args.points,
    )
    print(f"wrote {paths['svg']}")
    print(f"wrote {paths['csv']}")
    return 0


def _cmd_oracle_compare(args) -> int:
    small = SystemConfig(n_tx=8, n_rx=4, n_rf=2, n_streams=2, n_subcarriers=4)
    spec = _build_spec(args, axis_override=None, default_system=small)
    rows = oracle_compare(spec)
    out = Path(args.out)
    csv_path = emit_oracle_csv(rows, out / "oracle_compare.csv")
    for r in rows:
        print(
            f"{r.scheme}: mean ratio {r.mean_ratio:.4f}, min {r.min_ratio:.4f}, "
            f"within 5% of optimum in {100.0 * r.frac_within_5pct:.1f}% of "
            f"{r.n_trials} trials"
        )
    print(f"wrote {csv_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swhbf",
        description="Design and evaluate switch-based hybrid combiners for "
        "wideband multi-carrier receivers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, values_help=None):
        p.add_argument("--config", metavar="PATH", help="TOML config with [system] and [experiment] tables")
        p.add_argument("--seed", type=int, default=None, help="master seed (default from config, else 0)")
        p.add_argument("--trials", type=int, default=None, help="Monte Carlo trials per axis value")
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument(
            "--schemes",
            default=None,
            help="comma-separated subset of dbf,sw-es,sw-ts,sw-pga-ts,sw-random,ps-baseline",
        )
        if values_help:
            p.add_argument("--values", default=None, help=values_help)
        p.add_argument(
            "--timing",
            action="store_true",
            help="record wall-clock solver times (makes results.csv run-dependent)",
        )

    p = sub.add_parser("simulate", help="run the sweep axis configured in the config file")
    add_common(p, "sweep values for the configured axis (e.g. linear SNRs)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep-bandwidth", help="sweep the signal bandwidth in Hz")
    add_common(p, "bandwidths in Hz (default 0.5e9,1e9,2e9,4e9)")
    p.set_defaults(func=_cmd_sweep_bandwidth)

    p = sub.add_parser("sweep-subcarriers", help="sweep the subcarrier count")
    add_common(p, "subcarrier counts (default 16,32,64,128)")
    p.set_defaults(func=_cmd_sweep_subcarriers)

    p = sub.add_parser("beampattern", help="write the beam-squint illustration (SVG + CSV)")
    p.add_argument("--config", metavar="PATH", help="optional TOML config; [system] sets defaults")
    p.add_argument("--out", default="out", help="output directory (default: out)")
    p.add_argument("--antennas", type=int, default=None, help="array size (default: config n_rx or 16)")
    p.add_argument("--focus-deg", type=float, default=30.0, help="beam focus angle in degrees")
    p.add_argument(
        "--frequencies-ghz",
        default=None,
        help="comma-separated evaluation frequencies in GHz (default: band edges and center)",
    )
    p.add_argument("--carrier-ghz", type=float, default=None, help="carrier frequency in GHz")
    p.add_argument("--points", type=int, default=1001, help="angle grid size (default 1001)")
    p.set_defaults(func=_cmd_beampattern)

    p = sub.add_parser(
        "oracle-compare",
        help="compare tabu searches against exhaustive enumeration (small arrays)",
    )
    add_common(p)
    p.set_defaults(func=_cmd_oracle_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DimensionGuardError as exc:
        print(f"dimension guard: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
