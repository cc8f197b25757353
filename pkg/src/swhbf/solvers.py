"""Search algorithms for the binary analog combiner of a switch network.

The design variable is an ``n_rx x n_rf`` 0/1 matrix (each switch either
connects an antenna to a chain or not) that must keep at least ``n_streams``
independent columns. The searches maximize the band-averaged rate objective
from :func:`swhbf.rxbeam.analog_objective`:

* :func:`tabu_search` - first-order (single switch flip) neighborhood walk
  with a FIFO tabu list and strict-improvement moves.
* :func:`pga_relaxed` - projected gradient ascent on the box relaxation
  [0, 1], with an analytic gradient; :func:`round_and_repair` maps the
  relaxed point back to a feasible binary matrix.
* :func:`pga_aided_tabu` - the relaxed solution, rounded, used to seed the
  tabu search.
* :func:`exhaustive_search` - exact enumeration, guarded to small sizes.
* :func:`random_combiner` / :func:`ps_baseline_combiner` - reference points.

Vectorized combiners are read column-major, so bit index ``i`` of the vector
is entry ``(i % n_rx, i // n_rx)`` of the matrix.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionGuardError
from .linalg import DEFAULT_RTOL, numerical_rank, pinv
from .rxbeam import as_covariance_set, _objective_from_factors

_LN2 = np.log(2.0)

# Hard cap on n_rx * n_rf for exhaustive enumeration (2^20 candidates).
MAX_EXHAUSTIVE_BITS = 20

# Consecutive rejected draws after which random generation gives up.
MAX_RANDOM_DRAWS = 1000


@dataclass(frozen=True)
class TabuConfig:
    """Tabu-search controls.

    ``list_length`` is the FIFO tabu memory, ``max_iterations`` the outer
    iteration cap, ``stall_limit`` the number of consecutive iterations
    without incumbent improvement tolerated before stopping.
    """

    list_length: int
    max_iterations: int
    stall_limit: int

    def __post_init__(self):
        for name in ("list_length", "max_iterations", "stall_limit"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    @classmethod
    def for_dimensions(cls, n_rx: int, n_rf: int) -> "TabuConfig":
        """Size-scaled defaults: L = 10 n_rx, N_iter = 10 n_rx n_rf, stall = n_rx n_rf."""
        return cls(
            list_length=10 * n_rx,
            max_iterations=10 * n_rx * n_rf,
            stall_limit=n_rx * n_rf,
        )


@dataclass(frozen=True)
class PgaConfig:
    """Projected-gradient controls: step ``step_scale / sqrt(i + 1)`` at
    iteration i, stop when the relative objective change drops below
    ``convergence_tol``."""

    step_scale: float = 1.0
    max_iterations: int = 500
    convergence_tol: float = 1e-6

    def __post_init__(self):
        if self.step_scale <= 0:
            raise ValueError("step_scale must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.convergence_tol <= 0:
            raise ValueError("convergence_tol must be positive")


@dataclass
class SolveResult:
    """Outcome of one combiner search."""

    combiner: np.ndarray  # (n_rx, n_rf) binary
    objective: float
    trajectory: list[float] = field(default_factory=list)
    evaluations: int = 0
    enumerated: int | None = None  # exhaustive search only


def vec_combiner(mat: np.ndarray) -> np.ndarray:
    """Column-major flattening of a combiner matrix."""
    return np.asarray(mat).flatten(order="F")


def unvec_combiner(w: np.ndarray, n_rx: int) -> np.ndarray:
    """Inverse of :func:`vec_combiner` given the antenna count."""
    w = np.asarray(w)
    if w.size % n_rx:
        raise ValueError(f"vector of length {w.size} is not a multiple of {n_rx}")
    return w.reshape((n_rx, -1), order="F")


def _check_binary_combiner(mat, n_streams: int) -> np.ndarray:
    mat = np.asarray(mat)
    if mat.ndim != 2:
        raise ValueError(f"combiner must be 2-D, got shape {mat.shape}")
    vals = np.asarray(mat, dtype=float)
    if not np.all((vals == 0.0) | (vals == 1.0)):
        raise ValueError("combiner entries must be exactly 0 or 1")
    if not 1 <= n_streams <= mat.shape[1]:
        raise ValueError("need 1 <= n_streams <= n_rf")
    return vals.astype(np.int8)


def is_feasible(mat, n_streams: int) -> bool:
    """True when the binary matrix keeps at least ``n_streams`` independent columns."""
    return numerical_rank(np.asarray(mat, dtype=float)) >= n_streams


def default_initial_combiner(n_rx: int, n_rf: int, n_streams: int) -> np.ndarray:
    """Deterministic feasible start: all ones for single-stream, otherwise an
    identity pattern in the top rows."""
    if not 1 <= n_streams <= n_rf <= n_rx:
        raise ValueError("need 1 <= n_streams <= n_rf <= n_rx")
    if n_streams == 1:
        return np.ones((n_rx, n_rf), dtype=np.int8)
    out = np.zeros((n_rx, n_rf), dtype=np.int8)
    for i in range(min(n_rx, n_rf)):
        out[i, i] = 1
    return out


def _batch_feasible(mats: np.ndarray, n_streams: int) -> np.ndarray:
    """Feasibility mask for a stack of binary matrices, via batched SVD."""
    s = np.linalg.svd(mats.astype(float), compute_uv=False)
    smax = s[:, 0]
    ranks = np.sum(s > DEFAULT_RTOL * np.maximum(smax, 1e-300)[:, None], axis=1)
    ranks[smax == 0.0] = 0
    return ranks >= n_streams


def neighbors(w: np.ndarray, n_rx: int, n_streams: int) -> list[np.ndarray]:
    """Feasible Hamming-distance-1 neighbors of a vectorized combiner,
    ordered by ascending flip index."""
    w = np.asarray(w, dtype=np.int8)
    nbits = w.size
    cands = np.repeat(w[None, :], nbits, axis=0)
    idx = np.arange(nbits)
    cands[idx, idx] ^= 1
    n_rf = nbits // n_rx
    mats = cands.reshape(nbits, n_rf, n_rx).transpose(0, 2, 1)
    keep = _batch_feasible(mats, n_streams)
    return [cands[i] for i in range(nbits) if keep[i]]


class _CountingObjective:
    """Objective evaluator that counts calls; shared by all searches."""

    def __init__(self, cov, noise_power: float):
        if noise_power <= 0:
            raise ValueError("noise_power must be positive")
        self.factors = as_covariance_set(cov).factors
        self.noise_power = noise_power
        self.count = 0

    @property
    def n_rx(self) -> int:
        return self.factors.shape[1]

    def __call__(self, mat) -> float:
        self.count += 1
        return _objective_from_factors(np.asarray(mat), self.factors, self.noise_power)


def tabu_search(
    cov,
    noise_power: float,
    initial,
    n_streams: int,
    config: TabuConfig | None = None,
) -> SolveResult:
    """Tabu search over binary combiners with single-flip moves.

    Each iteration scans the feasible, non-tabu neighbors of the current
    point and moves to the best strictly improving one (ties broken by the
    lowest flip index); the visited point enters a FIFO tabu list. The best
    point ever seen is returned. Objective evaluations are capped at
    ``max_iterations * n_rx * n_rf`` including the initial evaluation, and
    neighbor values are cached while the search stays at the same point.

    Args:
        cov: CovarianceSet or raw Hermitian (K, n_rx, n_rx) stack.
        noise_power: per-subcarrier noise variance.
        initial: feasible binary (n_rx, n_rf) start.
        n_streams: rank floor for feasibility.
        config: optional TabuConfig; defaults scale with the problem size.

    Returns:
        SolveResult with the incumbent, its objective, the per-iteration
        incumbent trajectory, and the evaluation count.
    """
    objective = _CountingObjective(cov, noise_power)
    start = _check_binary_combiner(initial, n_streams)
    n_rx, n_rf = start.shape
    if n_rx != objective.n_rx:
        raise ValueError(
            f"combiner has {n_rx} rows but covariances have {objective.n_rx} antennas"
        )
    if not is_feasible(start, n_streams):
        raise ValueError("initial combiner violates the rank floor")
    if config is None:
        config = TabuConfig.for_dimensions(n_rx, n_rf)

    nbits = n_rx * n_rf
    eval_budget = config.max_iterations * nbits

    current = vec_combiner(start)
    current_val = objective(unvec_combiner(current, n_rx))
    best = current.copy()
    best_val = current_val

    tabu_queue: deque[bytes] = deque()
    tabu_members: Counter[bytes] = Counter()

    def push_tabu(vec: np.ndarray) -> None:
        key = vec.tobytes()
        tabu_queue.append(key)
        tabu_members[key] += 1
        if len(tabu_queue) > config.list_length:
            old = tabu_queue.popleft()
            tabu_members[old] -= 1
            if not tabu_members[old]:
                del tabu_members[old]

    push_tabu(current)
    trajectory = [best_val]
    stall = 0
    # Neighbor cache: list of [key, vector, value-or-None], valid while the
    # search stays at `current`.
    cache = None

    for _ in range(config.max_iterations):
        if cache is None:
            cache = [[v.tobytes(), v, None] for v in neighbors(current, n_rx, n_streams)]
        move = None
        move_val = current_val
        budget_hit = False
        any_open = False
        for entry in cache:
            key, vec, val = entry
            if key in tabu_members:
                continue
            any_open = True
            if val is None:
                if objective.count >= eval_budget:
                    budget_hit = True
                    break
                val = objective(unvec_combiner(vec, n_rx))
                entry[2] = val
            if val > move_val:
                move = vec
                move_val = val
        if move is not None:
            current = move
            current_val = move_val
            cache = None
        if current_val > best_val:
            best = current.copy()
            best_val = current_val
            stall = 0
        else:
            stall += 1
        push_tabu(current)
        trajectory.append(best_val)
        if budget_hit or not any_open or stall >= config.stall_limit:
            break

    return SolveResult(
        combiner=unvec_combiner(best, n_rx).astype(np.int8),
        objective=best_val,
        trajectory=trajectory,
        evaluations=objective.count,
    )


def relaxed_gradient(w: np.ndarray, cov, noise_power: float) -> np.ndarray:
    """Analytic gradient of the rate objective on the box relaxation.

    With ``P = W W^dag`` and ``M_k = I + G_k^H P G_k / noise``, the gradient
    is ``2 / (noise K ln2) * (I - P) [sum_k Re(G_k M_k^{-1} G_k^H)] (W^dag)^T``.
    A numerically rank-deficient ``W`` is perturbed by a small identity
    pattern before the pseudo-inverse so the projector is well defined.
    """
    if noise_power <= 0:
        raise ValueError("noise_power must be positive")
    factors = as_covariance_set(cov).factors
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != factors.shape[1]:
        raise ValueError(f"combiner shape {w.shape} incompatible with covariances")
    n_rx, n_rf = w.shape
    if numerical_rank(w) < n_rf:
        bump = np.zeros_like(w)
        for i in range(n_rf):
            bump[i % n_rx, i] = 1.0
        w = w + 1e-9 * bump
    w_pinv = pinv(w)  # (n_rf, n_rx)
    proj = w @ w_pinv
    c = 1.0 / noise_power
    pg = np.einsum("ij,kjm->kim", proj, factors)
    m = np.einsum("kim,kip->kmp", factors.conj(), pg) * c
    m += np.eye(m.shape[1])[None, :, :]
    m_inv = np.linalg.inv(m)
    s = np.einsum("kim,kmp,kjp->kij", factors, m_inv, factors.conj())
    s_sum = np.sum(s.real, axis=0)
    k_count = factors.shape[0]
    scale = 2.0 * c / (k_count * _LN2)
    return scale * (np.eye(n_rx) - proj) @ s_sum @ w_pinv.T


def pga_relaxed(
    cov,
    noise_power: float,
    initial: np.ndarray,
    config: PgaConfig | None = None,
) -> np.ndarray:
    """Projected gradient ascent on the box-relaxed combiner.

    Iterates ``W <- clip(W + alpha_i grad, 0, 1)`` with the diminishing step
    ``alpha_i = step_scale / sqrt(i + 1)`` and returns the best iterate seen
    (never worse than the start)."""
    mat, _ = _pga_relaxed_counted(cov, noise_power, initial, config)
    return mat


def _pga_relaxed_counted(cov, noise_power, initial, config):
    if config is None:
        config = PgaConfig()
    objective = _CountingObjective(cov, noise_power)
    w = np.clip(np.asarray(initial, dtype=float), 0.0, 1.0)
    if w.ndim != 2 or w.shape[0] != objective.n_rx:
        raise ValueError(f"initial combiner shape {w.shape} incompatible with covariances")
    prev = objective(w)
    best, best_val = w.copy(), prev
    for i in range(1, config.max_iterations + 1):
        step = config.step_scale / np.sqrt(i + 1.0)
        w = np.clip(w + step * relaxed_gradient(w, cov, noise_power), 0.0, 1.0)
        val = objective(w)
        if val > best_val:
            best, best_val = w.copy(), val
        if abs(val - prev) <= config.convergence_tol * max(1.0, abs(prev)):
            break
        prev = val
    return best, objective.count


def round_and_repair(relaxed: np.ndarray, n_streams: int) -> np.ndarray:
    """Threshold a relaxed combiner at 0.5 and restore the rank floor.

    If thresholding breaks feasibility, entries are flipped cumulatively in
    order of proximity to 0.5 (column-major index breaking ties) until the
    rank floor holds; if every flip is exhausted the identity-pattern start
    is returned.
    """
    relaxed = np.asarray(relaxed, dtype=float)
    if relaxed.ndim != 2:
        raise ValueError(f"expected a 2-D relaxed combiner, got {relaxed.shape}")
    n_rx, n_rf = relaxed.shape
    if not 1 <= n_streams <= min(n_rx, n_rf):
        raise ValueError("need 1 <= n_streams <= min(n_rx, n_rf)")
    binary = (relaxed >= 0.5).astype(np.int8)
    if is_feasible(binary, n_streams):
        return binary
    flat = vec_combiner(binary)
    distances = np.abs(vec_combiner(relaxed) - 0.5)
    for idx in np.argsort(distances, kind="stable"):
        flat[idx] ^= 1
        candidate = unvec_combiner(flat, n_rx)
        if is_feasible(candidate, n_streams):
            return candidate.astype(np.int8)
    fallback = np.zeros((n_rx, n_rf), dtype=np.int8)
    for i in range(min(n_rx, n_rf)):
        fallback[i, i] = 1
    return fallback


def pga_aided_tabu(
    cov,
    noise_power: float,
    shape: tuple[int, int],
    n_streams: int,
    tabu_config: TabuConfig | None = None,
    pga_config: PgaConfig | None = None,
    rng: np.random.Generator | int | None = None,
) -> SolveResult:
    """Tabu search seeded by the rounded projected-gradient solution.

    The relaxation starts from a uniform random interior point drawn from
    ``rng``. Reported evaluations include the relaxed phase's objective
    calls; the trajectory is the tabu phase's.
    """
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    n_rx, n_rf = shape
    start = rng.uniform(0.0, 1.0, size=(n_rx, n_rf))
    relaxed, pga_evals = _pga_relaxed_counted(cov, noise_power, start, pga_config)
    seed_mat = round_and_repair(relaxed, n_streams)
    result = tabu_search(cov, noise_power, seed_mat, n_streams, tabu_config)
    result.evaluations += pga_evals
    return result


def exhaustive_search(
    cov,
    noise_power: float,
    shape: tuple[int, int],
    n_streams: int,
) -> SolveResult:
    """Enumerate every binary combiner and return the exact maximizer.

    Candidates are decoded from integers with bit ``i`` holding vector entry
    ``i`` (column-major); ties keep the smallest integer. Guarded by
    ``MAX_EXHAUSTIVE_BITS``; only feasible candidates are scored.
    """
    n_rx, n_rf = shape
    if not 1 <= n_streams <= n_rf <= n_rx:
        raise ValueError("need 1 <= n_streams <= n_rf <= n_rx")
    nbits = n_rx * n_rf
    if nbits > MAX_EXHAUSTIVE_BITS:
        raise DimensionGuardError(
            f"exhaustive search over {nbits} switches exceeds the "
            f"{MAX_EXHAUSTIVE_BITS}-bit guard"
        )
    objective = _CountingObjective(cov, noise_power)
    if objective.n_rx != n_rx:
        raise ValueError("shape inconsistent with the covariance antenna count")
    total = 1 << nbits
    bit_positions = np.arange(nbits)
    best_val = -np.inf
    best_vec = None
    chunk = 4096
    for lo in range(0, total, chunk):
        codes = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        bits = ((codes[:, None] >> bit_positions[None, :]) & 1).astype(np.int8)
        mats = bits.reshape(len(codes), n_rf, n_rx).transpose(0, 2, 1)
        keep = _batch_feasible(mats, n_streams)
        for i in np.nonzero(keep)[0]:
            val = objective(mats[i])
            if val > best_val:
                best_val = val
                best_vec = bits[i]
    if best_vec is None:
        raise ValueError("no feasible combiner exists for the requested rank floor")
    return SolveResult(
        combiner=unvec_combiner(best_vec, n_rx).astype(np.int8),
        objective=best_val,
        trajectory=[best_val],
        evaluations=objective.count,
        enumerated=total,
    )


def random_combiner(
    rng: np.random.Generator, shape: tuple[int, int], n_streams: int
) -> np.ndarray:
    """IID fair-coin binary combiner, redrawn until feasible.

    Raises ValueError after ``MAX_RANDOM_DRAWS`` consecutive infeasible draws.
    """
    n_rx, n_rf = shape
    if not 1 <= n_streams <= n_rf <= n_rx:
        raise ValueError("need 1 <= n_streams <= n_rf <= n_rx")
    for _ in range(MAX_RANDOM_DRAWS):
        candidate = rng.integers(0, 2, size=(n_rx, n_rf), dtype=np.int8)
        if is_feasible(candidate, n_streams):
            return candidate
    raise ValueError(f"no feasible draw in {MAX_RANDOM_DRAWS} attempts")


def ps_baseline_combiner(channels: np.ndarray, n_rf: int) -> np.ndarray:
    """Unit-modulus reference combiner for a phase-shifter network.

    Takes the top ``n_rf`` left singular vectors of the center-subcarrier
    channel and keeps only their phases. Not a tuned design; it serves as the
    narrowband-style baseline whose rate degrades under beam squint.
    """
    channels = np.asarray(channels, dtype=complex)
    if channels.ndim != 3:
        raise ValueError(f"expected (K, n_rx, n_tx) channels, got {channels.shape}")
    k_count, n_rx, _ = channels.shape
    if not 1 <= n_rf <= n_rx:
        raise ValueError("need 1 <= n_rf <= n_rx")
    center = channels[(k_count + 1) // 2 - 1]
    u, _, _ = np.linalg.svd(center)
    return np.exp(1j * np.angle(u[:, :n_rf]))
