"""Input-validation helpers shared by the estimator layer."""

from __future__ import annotations

import numbers

import numpy as np

from .rxbeam import CovarianceSet, as_covariance_set


def check_covariances(X) -> CovarianceSet:
    """Coerce estimator input into a CovarianceSet.

    Accepts a CovarianceSet, a (K, n, n) Hermitian PSD stack, or a single
    (n, n) matrix (treated as one subcarrier).
    """
    if isinstance(X, CovarianceSet):
        return X
    arr = np.asarray(X)
    if arr.ndim == 2:
        arr = arr[None, :, :]
    if arr.ndim != 3:
        raise ValueError(
            f"expected a covariance stack with 2 or 3 dimensions, got shape {arr.shape}"
        )
    return as_covariance_set(arr)


def check_positive_scalar(value, name: str) -> float:
    if not isinstance(value, numbers.Real) or not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite scalar, got {value!r}")
    return float(value)


def check_dimensions(n_antennas: int, n_rf: int, n_streams: int) -> None:
    if not 1 <= n_streams <= n_rf <= n_antennas:
        raise ValueError(
            "dimensions must satisfy 1 <= n_streams <= n_rf <= n_antennas, "
            f"got n_streams={n_streams}, n_rf={n_rf}, n_antennas={n_antennas}"
        )
