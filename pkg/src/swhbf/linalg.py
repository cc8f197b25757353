"""Dense complex-matrix primitives used throughout the package.

Thin wrappers around ``numpy.linalg`` that pin the tolerance conventions
(relative singular-value cutoffs, Hermitian/PSD checks) in one place so every
module makes the same numerical decisions.
"""

from __future__ import annotations

import numpy as np

# Relative singular-value cutoff: values below DEFAULT_RTOL * s_max count as zero.
DEFAULT_RTOL = 1e-8

# Largest relative asymmetry tolerated before a matrix is rejected as non-Hermitian.
HERMITIAN_RTOL = 1e-9

_LN2 = np.log(2.0)


def svd(a: np.ndarray):
    """Thin SVD ``a = u @ diag(s) @ v.conj().T`` with descending singular values.

    Returns:
        Tuple ``(u, s, v)`` where ``u`` is (m, r), ``s`` is (r,) real
        non-negative descending, ``v`` is (n, r), ``r = min(m, n)``.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"svd expects a 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("svd input contains non-finite entries")
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    return u, s, vh.conj().T


def numerical_rank(a: np.ndarray, rtol: float = DEFAULT_RTOL) -> int:
    """Number of singular values above ``rtol * s_max``. Zero matrices have rank 0."""
    if rtol < 0:
        raise ValueError("rtol must be non-negative")
    _, s, _ = svd(a)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def pinv(a: np.ndarray, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Moore-Penrose pseudo-inverse with singular values below ``rtol * s_max``
    treated as exactly zero. The pseudo-inverse of a zero matrix is zero."""
    if rtol < 0:
        raise ValueError("rtol must be non-negative")
    a = np.asarray(a)
    u, s, v = svd(a)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=np.result_type(a.dtype, float))
    keep = s > rtol * s[0]
    return (v[:, keep] / s[keep]) @ u[:, keep].conj().T


def orthonormal_basis(a: np.ndarray, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Orthonormal basis for the column space of ``a`` (left singular vectors
    whose singular values exceed ``rtol * s_max``)."""
    u, s, _ = svd(a)
    if s.size == 0 or s[0] == 0.0:
        return u[:, :0]
    return u[:, s > rtol * s[0]]


def _check_hermitian(m: np.ndarray, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.size == 0:
        return m
    scale = max(1.0, float(np.max(np.abs(m))))
    if float(np.max(np.abs(m - m.conj().T))) > rtol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    return 0.5 * (m + m.conj().T)


def logdet2_eye_plus(m: np.ndarray, scale: float) -> float:
    """``log2 det(I + scale * M)`` for Hermitian PSD ``M``, via eigenvalues.

    Small negative eigenvalues from round-off are clipped to zero; clearly
    negative ones (below ``-1e-8`` times the spectral norm) raise ValueError.
    """
    if scale < 0:
        raise ValueError("scale must be non-negative")
    m = _check_hermitian(m)
    if m.size == 0:
        return 0.0
    w = np.linalg.eigvalsh(m)
    norm = max(abs(float(w[0])), abs(float(w[-1])))
    if float(w[0]) < -1e-8 * norm:
        raise ValueError("matrix is not positive semidefinite within tolerance")
    w = np.clip(w, 0.0, None)
    return float(np.sum(np.log1p(scale * w)) / _LN2)
