"""Receive-side processing: effective per-subcarrier covariances, MMSE
baseband combining, the analog-combiner rate objective, and the end-to-end
spectral efficiency of a two-stage receiver.

The rate objective is evaluated through an orthonormal basis of the analog
combiner's column space, which is numerically stable for ill-conditioned
combiners and makes the objective depend only on the selected subspace."""

from __future__ import annotations

import warnings

import numpy as np

from .errors import RankDeficientCombinerWarning
from .linalg import DEFAULT_RTOL, HERMITIAN_RTOL, orthonormal_basis
from .txbeam import PrecoderSet

_LN2 = np.log(2.0)


class CovarianceSet:
    """Per-subcarrier effective covariances ``H_k F_k F_k^H H_k^H``.

    Stored through their factors ``G_k = H_k F_k`` (shape (K, n_rx, width))
    when available, which keeps every downstream evaluation a low-rank
    operation; full matrices are materialized lazily on request.
    """

    def __init__(self, factors: np.ndarray):
        factors = np.asarray(factors, dtype=complex)
        if factors.ndim != 3:
            raise ValueError(f"expected (K, n_rx, width) factors, got {factors.shape}")
        if not np.all(np.isfinite(factors)):
            raise ValueError("covariance factors contain non-finite entries")
        self._factors = factors
        self._matrices = None

    @classmethod
    def from_factors(cls, factors: np.ndarray) -> "CovarianceSet":
        return cls(factors)

    @classmethod
    def from_matrices(cls, matrices: np.ndarray) -> "CovarianceSet":
        """Factorize Hermitian PSD matrices via eigendecomposition.

        Asymmetry beyond the shared Hermitian tolerance, or clearly negative
        eigenvalues, raise ValueError; round-off negatives are clipped.
        """
        matrices = np.asarray(matrices, dtype=complex)
        if matrices.ndim != 3 or matrices.shape[1] != matrices.shape[2]:
            raise ValueError(f"expected (K, n, n) matrices, got {matrices.shape}")
        if not np.all(np.isfinite(matrices)):
            raise ValueError("covariance matrices contain non-finite entries")
        herm = matrices.conj().transpose(0, 2, 1)
        scale = max(1.0, float(np.max(np.abs(matrices))) if matrices.size else 1.0)
        if matrices.size and float(np.max(np.abs(matrices - herm))) > HERMITIAN_RTOL * scale:
            raise ValueError("covariance matrices are not Hermitian within tolerance")
        sym = 0.5 * (matrices + herm)
        w, v = np.linalg.eigh(sym)
        norm = float(np.max(np.abs(w))) if w.size else 0.0
        if w.size and float(np.min(w)) < -1e-8 * max(norm, 1e-300):
            raise ValueError("covariance matrices are not PSD within tolerance")
        factors = v * np.sqrt(np.clip(w, 0.0, None))[:, None, :]
        obj = cls(factors)
        obj._matrices = sym
        return obj

    @property
    def factors(self) -> np.ndarray:
        return self._factors

    @property
    def matrices(self) -> np.ndarray:
        if self._matrices is None:
            g = self._factors
            self._matrices = np.einsum("kim,kjm->kij", g, g.conj())
        return self._matrices

    @property
    def n_subcarriers(self) -> int:
        return self._factors.shape[0]

    @property
    def n_antennas(self) -> int:
        return self._factors.shape[1]

    def __len__(self) -> int:
        return self.n_subcarriers


def effective_covariances(channels: np.ndarray, precoders) -> CovarianceSet:
    """Build the covariance set from channel matrices and precoders."""
    channels = np.asarray(channels, dtype=complex)
    f = precoders.precoders if isinstance(precoders, PrecoderSet) else np.asarray(precoders)
    if channels.ndim != 3 or f.ndim != 3 or channels.shape[0] != f.shape[0]:
        raise ValueError(
            f"incompatible shapes: channels {channels.shape}, precoders {f.shape}"
        )
    return CovarianceSet.from_factors(channels @ f)


def as_covariance_set(cov) -> CovarianceSet:
    """Coerce a CovarianceSet or a raw (K, n, n) Hermitian stack."""
    if isinstance(cov, CovarianceSet):
        return cov
    return CovarianceSet.from_matrices(cov)


def _objective_from_factors(combiner, factors: np.ndarray, noise_power: float) -> float:
    """Band-averaged ``log2 det(I + W^dag G_k G_k^H W / noise)``.

    Works on an orthonormal basis Q of col(W): by the projector identity the
    determinant equals ``det(I + B^H B / noise)`` with ``B = Q^H G_k``, and
    the smaller Gram side is used for the determinant.
    """
    w = np.asarray(combiner)
    q = orthonormal_basis(w.astype(complex), DEFAULT_RTOL)
    k_count = factors.shape[0]
    if q.shape[1] == 0:
        return 0.0
    b = np.einsum("nr,knm->krm", q.conj(), factors)  # (K, rank, width)
    rank, width = b.shape[1], b.shape[2]
    if width <= rank:
        gram = np.einsum("krm,krp->kmp", b.conj(), b)
        side = width
    else:
        gram = np.einsum("krm,kpm->krp", b, b.conj())
        side = rank
    eye = np.eye(side)
    sign, logabs = np.linalg.slogdet(eye[None, :, :] + gram / noise_power)
    return float(np.sum(logabs) / _LN2 / k_count)


def analog_objective(combiner, cov, noise_power: float) -> float:
    """Average mutual information achievable through an analog combiner.

    ``(1/K) sum_k log2 det(I + W^dag Sigma_k W / noise)`` where ``Sigma_k``
    are the effective covariances and ``W^dag`` is the pseudo-inverse of the
    combiner. Accepts binary, relaxed-real, or complex combiner matrices; an
    all-zero combiner scores 0. The value equals the spectral efficiency of
    the same combiner followed by per-subcarrier MMSE baseband combining.
    """
    if noise_power <= 0:
        raise ValueError("noise_power must be positive")
    cov = as_covariance_set(cov)
    w = np.asarray(combiner)
    if w.ndim != 2 or w.shape[0] != cov.n_antennas:
        raise ValueError(
            f"combiner shape {w.shape} incompatible with {cov.n_antennas} antennas"
        )
    return _objective_from_factors(w, cov.factors, noise_power)


def mmse_digital_combiner(
    analog_combiner, channel: np.ndarray, precoder: np.ndarray, noise_power: float
) -> np.ndarray:
    """MMSE baseband combiner behind a fixed analog stage, for one subcarrier.

    ``W_bb = (J J^H + noise * W^H W)^{-1} J`` with ``J = W^H H F``. A singular
    system falls back to the pseudo-inverse and emits
    RankDeficientCombinerWarning.
    """
    if noise_power <= 0:
        raise ValueError("noise_power must be positive")
    w = np.asarray(analog_combiner, dtype=complex)
    j = w.conj().T @ np.asarray(channel, dtype=complex) @ np.asarray(precoder, dtype=complex)
    a = j @ j.conj().T + noise_power * (w.conj().T @ w)
    try:
        out = np.linalg.solve(a, j)
        if not np.all(np.isfinite(out)):
            raise np.linalg.LinAlgError("non-finite solve result")
    except np.linalg.LinAlgError:
        warnings.warn(
            "singular MMSE system; using pseudo-inverse fallback",
            RankDeficientCombinerWarning,
            stacklevel=2,
        )
        out = np.linalg.pinv(a) @ j
    return out


def system_spectral_efficiency(
    analog_combiner, baseband_combiners, channels: np.ndarray, precoders, noise_power: float
) -> float:
    """Spectral efficiency of the cascade ``W_k = W_rf @ W_bb[k]``.

    ``(1/K) sum_k log2 det(I + W_k^dag H_k F_k F_k^H H_k^H W_k / noise)``,
    evaluated per subcarrier through an orthonormal basis of col(W_k).
    Subcarriers whose cascade is all-zero contribute zero.
    """
    if noise_power <= 0:
        raise ValueError("noise_power must be positive")
    channels = np.asarray(channels, dtype=complex)
    f = precoders.precoders if isinstance(precoders, PrecoderSet) else np.asarray(precoders)
    w_rf = np.asarray(analog_combiner, dtype=complex)
    k_count = channels.shape[0]
    if len(baseband_combiners) != k_count:
        raise ValueError("need one baseband combiner per subcarrier")
    total = 0.0
    for k in range(k_count):
        w_k = w_rf @ np.asarray(baseband_combiners[k], dtype=complex)
        g_k = channels[k] @ f[k]
        total += _objective_from_factors(w_k, g_k[None, :, :], noise_power)
    return total / k_count
