"""Switch-based hybrid combining for wideband multi-carrier receivers.

Library layout:

* :mod:`swhbf.channel` - clustered wideband channel with beam squint.
* :mod:`swhbf.txbeam` - eigenbeam precoding with joint water-filling.
* :mod:`swhbf.rxbeam` - covariances, MMSE combining, rate objectives.
* :mod:`swhbf.solvers` - tabu / projected-gradient / exhaustive searches.
* :mod:`swhbf.power` - receiver power and energy-efficiency models.
* :mod:`swhbf.harness` - seeded Monte Carlo sweeps and result emission.
* :mod:`swhbf.estimators` - sklearn-style wrappers (imported on demand).
"""

from .channel import (
    ChannelRealization,
    ClusterParams,
    beam_pattern,
    channel_tap,
    draw_clusters,
    pulse_shape,
    realize_channel,
    steering_vector,
    subcarrier_channels,
    subcarrier_frequency,
)
from .config import (
    PRESETS,
    SystemConfig,
    large_array_config,
    small_search_config,
    standard_config,
    with_axis_value,
)
from .errors import ConfigError, DimensionGuardError, RankDeficientCombinerWarning
from .harness import (
    ExperimentSpec,
    OracleRow,
    ResultRow,
    emit_beam_pattern_figure,
    emit_csv,
    emit_oracle_csv,
    emit_summary_figure,
    oracle_compare,
    run_bandwidth_sweep,
    run_experiment,
    run_snr_sweep,
    run_subcarrier_sweep,
)
from .power import (
    ARCHITECTURES,
    DevicePowers,
    FULLY_DIGITAL,
    PHASE_SHIFTER_HYBRID,
    SWITCH_HYBRID,
    energy_efficiency,
    rf_chain_power_mw,
    total_power_mw,
)
from .rxbeam import (
    CovarianceSet,
    analog_objective,
    effective_covariances,
    mmse_digital_combiner,
    system_spectral_efficiency,
)
from .solvers import (
    PgaConfig,
    SolveResult,
    TabuConfig,
    default_initial_combiner,
    exhaustive_search,
    neighbors,
    pga_aided_tabu,
    pga_relaxed,
    ps_baseline_combiner,
    random_combiner,
    relaxed_gradient,
    round_and_repair,
    tabu_search,
)
from .txbeam import PrecoderSet, dbf_spectral_efficiency, design_precoders, water_fill

__version__ = "0.1.0"

__all__ = [
    "ARCHITECTURES",
    "ChannelRealization",
    "ClusterParams",
    "ConfigError",
    "CovarianceSet",
    "DevicePowers",
    "DimensionGuardError",
    "ExperimentSpec",
    "FULLY_DIGITAL",
    "OracleRow",
    "PHASE_SHIFTER_HYBRID",
    "PRESETS",
    "PgaConfig",
    "PrecoderSet",
    "RankDeficientCombinerWarning",
    "ResultRow",
    "SWITCH_HYBRID",
    "SolveResult",
    "SystemConfig",
    "TabuConfig",
    "analog_objective",
    "beam_pattern",
    "channel_tap",
    "dbf_spectral_efficiency",
    "default_initial_combiner",
    "design_precoders",
    "draw_clusters",
    "effective_covariances",
    "emit_beam_pattern_figure",
    "emit_csv",
    "emit_oracle_csv",
    "emit_summary_figure",
    "energy_efficiency",
    "exhaustive_search",
    "large_array_config",
    "mmse_digital_combiner",
    "neighbors",
    "oracle_compare",
    "pga_aided_tabu",
    "pga_relaxed",
    "ps_baseline_combiner",
    "pulse_shape",
    "random_combiner",
    "realize_channel",
    "relaxed_gradient",
    "rf_chain_power_mw",
    "round_and_repair",
    "run_bandwidth_sweep",
    "run_experiment",
    "run_snr_sweep",
    "run_subcarrier_sweep",
    "small_search_config",
    "standard_config",
    "steering_vector",
    "subcarrier_channels",
    "subcarrier_frequency",
    "system_spectral_efficiency",
    "tabu_search",
    "total_power_mw",
    "water_fill",
    "with_axis_value",
]
