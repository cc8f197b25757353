"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A scenario or experiment configuration is inconsistent or out of range."""


class DimensionGuardError(ValueError):
    """A problem size exceeds a hard guard (e.g. exhaustive enumeration width)."""


class RankDeficientCombinerWarning(RuntimeWarning):
    """Emitted when a combiner is numerically rank deficient and a
    pseudo-inverse fallback is used in place of a direct solve."""
