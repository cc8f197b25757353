"""Scikit-learn style wrappers around the combiner searches.

The functional API in :mod:`swhbf.solvers` is the primary surface; these
estimators expose the same searches through ``fit`` / ``get_params`` so they
compose with sklearn tooling (cloning, parameter grids). ``X`` is the
per-subcarrier effective covariance stack, and the fitted combiner plays the
role of the learned model.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from . import solvers
from .rxbeam import analog_objective
from .validation import check_covariances, check_dimensions, check_positive_scalar


class _BaseCombinerSearch(BaseEstimator):
    """Shared fit/score plumbing; subclasses implement ``_solve``."""

    def __init__(self, n_rf=2, n_streams=1, noise_power=1.0):
        self.n_rf = n_rf
        self.n_streams = n_streams
        self.noise_power = noise_power

    def _validate(self, X):
        cov = check_covariances(X)
        check_dimensions(cov.n_antennas, self.n_rf, self.n_streams)
        check_positive_scalar(self.noise_power, "noise_power")
        return cov

    def fit(self, X, y=None):
        """Search for a combiner maximizing the rate objective on ``X``.

        Args:
            X: CovarianceSet, (K, n, n) Hermitian stack, or single (n, n).
            y: ignored, present for sklearn API compatibility.

        Returns:
            self, with ``combiner_``, ``objective_``, ``trajectory_``,
            ``n_evaluations_`` and ``n_antennas_`` set.
        """
        cov = self._validate(X)
        result = self._solve(cov)
        self.n_antennas_ = cov.n_antennas
        self.combiner_ = result.combiner
        self.objective_ = result.objective
        self.trajectory_ = list(result.trajectory)
        self.n_evaluations_ = result.evaluations
        return self

    def score(self, X=None, y=None):
        """Rate objective of the fitted combiner, on ``X`` if given."""
        if not hasattr(self, "combiner_"):
            raise AttributeError("estimator is not fitted; call fit first")
        if X is None:
            return self.objective_
        return analog_objective(self.combiner_, check_covariances(X), self.noise_power)

    def _solve(self, cov):  # pragma: no cover - abstract
        raise NotImplementedError


class TabuCombinerSearch(_BaseCombinerSearch):
    """Single-flip tabu search from a deterministic feasible start.

    Parameters mirror :class:`swhbf.solvers.TabuConfig`; leaving them None
    applies the size-scaled defaults. ``initial`` may be "auto" or an
    explicit binary matrix.
    """

    def __init__(
        self,
        n_rf=2,
        n_streams=1,
        noise_power=1.0,
        list_length=None,
        max_iterations=None,
        stall_limit=None,
        initial="auto",
    ):
        super().__init__(n_rf=n_rf, n_streams=n_streams, noise_power=noise_power)
        self.list_length = list_length
        self.max_iterations = max_iterations
        self.stall_limit = stall_limit
        self.initial = initial

    def _tabu_config(self, n_antennas):
        base = solvers.TabuConfig.for_dimensions(n_antennas, self.n_rf)
        return solvers.TabuConfig(
            list_length=self.list_length if self.list_length is not None else base.list_length,
            max_iterations=(
                self.max_iterations if self.max_iterations is not None else base.max_iterations
            ),
            stall_limit=self.stall_limit if self.stall_limit is not None else base.stall_limit,
        )

    def _initial(self, n_antennas):
        if isinstance(self.initial, str) and self.initial == "auto":
            return solvers.default_initial_combiner(n_antennas, self.n_rf, self.n_streams)
        return np.asarray(self.initial)

    def _solve(self, cov):
        return solvers.tabu_search(
            cov,
            self.noise_power,
            self._initial(cov.n_antennas),
            self.n_streams,
            self._tabu_config(cov.n_antennas),
        )


class PgaAidedTabuCombinerSearch(TabuCombinerSearch):
    """Tabu search seeded by the rounded box-relaxation optimum."""

    def __init__(
        self,
        n_rf=2,
        n_streams=1,
        noise_power=1.0,
        list_length=None,
        max_iterations=None,
        stall_limit=None,
        step_scale=1.0,
        pga_max_iterations=500,
        convergence_tol=1e-6,
        random_state=None,
    ):
        super().__init__(
            n_rf=n_rf,
            n_streams=n_streams,
            noise_power=noise_power,
            list_length=list_length,
            max_iterations=max_iterations,
            stall_limit=stall_limit,
        )
        self.step_scale = step_scale
        self.pga_max_iterations = pga_max_iterations
        self.convergence_tol = convergence_tol
        self.random_state = random_state

    def _solve(self, cov):
        return solvers.pga_aided_tabu(
            cov,
            self.noise_power,
            (cov.n_antennas, self.n_rf),
            self.n_streams,
            tabu_config=self._tabu_config(cov.n_antennas),
            pga_config=solvers.PgaConfig(
                step_scale=self.step_scale,
                max_iterations=self.pga_max_iterations,
                convergence_tol=self.convergence_tol,
            ),
            rng=np.random.default_rng(self.random_state),
        )


class ExhaustiveCombinerSearch(_BaseCombinerSearch):
    """Exact enumeration (small arrays only); sets ``n_enumerated_``."""

    def _solve(self, cov):
        result = solvers.exhaustive_search(
            cov, self.noise_power, (cov.n_antennas, self.n_rf), self.n_streams
        )
        self.n_enumerated_ = result.enumerated
        return result


class RandomCombinerSearch(_BaseCombinerSearch):
    """Feasible fair-coin draw, the reference floor for the searches."""

    def __init__(self, n_rf=2, n_streams=1, noise_power=1.0, random_state=None):
        super().__init__(n_rf=n_rf, n_streams=n_streams, noise_power=noise_power)
        self.random_state = random_state

    def _solve(self, cov):
        rng = np.random.default_rng(self.random_state)
        combiner = solvers.random_combiner(rng, (cov.n_antennas, self.n_rf), self.n_streams)
        value = analog_objective(combiner, cov, self.noise_power)
        return solvers.SolveResult(
            combiner=combiner, objective=value, trajectory=[value], evaluations=1
        )
