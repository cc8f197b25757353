import numpy as np
import numpy.testing as npt
import pytest

from swhbf.errors import DimensionGuardError
from swhbf.rxbeam import CovarianceSet, analog_objective
from swhbf.solvers import (
    MAX_EXHAUSTIVE_BITS,
    PgaConfig,
    TabuConfig,
    default_initial_combiner,
    exhaustive_search,
    is_feasible,
    neighbors,
    pga_aided_tabu,
    pga_relaxed,
    ps_baseline_combiner,
    random_combiner,
    relaxed_gradient,
    round_and_repair,
    tabu_search,
    unvec_combiner,
    vec_combiner,
)


def _random_cov(rng, k=3, n=4, m=2):
    g = (rng.standard_normal((k, n, m)) + 1j * rng.standard_normal((k, n, m))) / np.sqrt(2.0)
    return CovarianceSet.from_factors(g)


def test_vec_unvec_are_column_major():
    mat = np.array([[1, 4], [2, 5], [3, 6]])
    npt.assert_array_equal(vec_combiner(mat), [1, 2, 3, 4, 5, 6])
    npt.assert_array_equal(unvec_combiner([1, 2, 3, 4, 5, 6], 3), mat)
    with pytest.raises(ValueError):
        unvec_combiner([1, 2, 3], 2)


def test_default_initial_combiner_is_feasible():
    w = default_initial_combiner(4, 2, 2)
    npt.assert_array_equal(w, [[1, 0], [0, 1], [0, 0], [0, 0]])
    assert is_feasible(w, 2)
    npt.assert_array_equal(default_initial_combiner(3, 2, 1), np.ones((3, 2)))
    with pytest.raises(ValueError):
        default_initial_combiner(2, 3, 1)  # n_rf > n_rx


def test_neighbors_flip_one_bit_in_ascending_order():
    w0 = vec_combiner(default_initial_combiner(3, 2, 1))
    nbrs = neighbors(w0, 3, 1)
    assert len(nbrs) <= w0.size
    flipped = []
    for v in nbrs:
        diff = np.nonzero(v != w0)[0]
        assert diff.size == 1
        flipped.append(diff[0])
    assert flipped == sorted(flipped)
    for v in nbrs:
        assert is_feasible(unvec_combiner(v, 3), 1)


def test_neighbors_filter_rank_breaking_flips():
    # From the 2x2 identity with rank floor 2, clearing either diagonal bit
    # breaks feasibility, so only the two set-a-zero flips survive.
    w0 = vec_combiner(np.eye(2, dtype=np.int8))
    nbrs = neighbors(w0, 2, 2)
    assert len(nbrs) == 2
    for v in nbrs:
        mat = unvec_combiner(v, 2)
        assert is_feasible(mat, 2)
        assert mat.sum() == 3


def test_tabu_config_scaling_and_validation():
    cfg = TabuConfig.for_dimensions(8, 2)
    assert cfg.list_length == 80
    assert cfg.max_iterations == 160
    assert cfg.stall_limit == 16
    with pytest.raises(ValueError):
        TabuConfig(list_length=0, max_iterations=1, stall_limit=1)


class TestTabuSearch:
    def test_finds_optimum_on_small_instances(self):
        rng = np.random.default_rng(0)
        for trial in range(8):
            cov = _random_cov(rng, k=2, n=4, m=2)
            best = exhaustive_search(cov, 1.0, (4, 2), 2)
            res = tabu_search(cov, 1.0, default_initial_combiner(4, 2, 2), 2)
            assert res.objective <= best.objective + 1e-10
            assert res.objective >= 0.90 * best.objective  # near-exact on toy sizes

    def test_trajectory_and_budget_invariants(self):
        cov = _random_cov(np.random.default_rng(1))
        start = default_initial_combiner(4, 2, 2)
        res = tabu_search(cov, 1.0, start, 2)
        traj = np.asarray(res.trajectory)
        assert np.all(np.diff(traj) >= 0)
        assert traj[-1] == res.objective
        assert traj[0] <= res.objective
        limits = TabuConfig.for_dimensions(4, 2)
        assert res.evaluations <= limits.max_iterations * 8
        assert is_feasible(res.combiner, 2)
        assert set(np.unique(res.combiner)).issubset({0, 1})

    def test_never_worse_than_start(self):
        rng = np.random.default_rng(2)
        cov = _random_cov(rng)
        start = default_initial_combiner(4, 2, 2)
        res = tabu_search(cov, 1.0, start, 2)
        assert res.objective >= analog_objective(start, cov, 1.0) - 1e-12

    def test_respects_tight_evaluation_budget(self):
        cov = _random_cov(np.random.default_rng(3))
        tight = TabuConfig(list_length=2, max_iterations=1, stall_limit=1)
        res = tabu_search(cov, 1.0, default_initial_combiner(4, 2, 2), 2, tight)
        assert res.evaluations <= 1 * 4 * 2

    def test_rejects_bad_starts(self):
        cov = _random_cov(np.random.default_rng(4))
        with pytest.raises(ValueError):
            tabu_search(cov, 1.0, np.zeros((4, 2)), 2)  # rank floor violated
        with pytest.raises(ValueError):
            tabu_search(cov, 1.0, 0.5 * np.ones((4, 2)), 1)  # not binary
        with pytest.raises(ValueError):
            tabu_search(cov, 1.0, default_initial_combiner(3, 2, 2), 2)  # shape mismatch

    def test_accepts_raw_matrix_stack(self):
        cov = _random_cov(np.random.default_rng(5))
        res = tabu_search(cov.matrices, 1.0, default_initial_combiner(4, 2, 2), 2)
        assert np.isfinite(res.objective)


class TestExhaustiveSearch:
    def test_reference_instance(self):
        # Sigma = diag(3, 1), one chain, unit noise: picking the strong antenna
        # alone scores log2(4) = 2 and beats [1,1] (log2 3) and [0,1] (log2 2).
        cov = CovarianceSet.from_matrices(np.diag([3.0, 1.0])[None].astype(complex))
        res = exhaustive_search(cov, 1.0, (2, 1), 1)
        npt.assert_array_equal(res.combiner, [[1], [0]])
        npt.assert_allclose(res.objective, 2.0, rtol=1e-12)
        assert res.enumerated == 4
        assert res.evaluations == 3  # all-zero candidate is infeasible

    def test_tie_break_keeps_smallest_code(self):
        # Identity covariances make every feasible single-chain combiner score
        # the same, so the winner must be the lowest-code candidate [1, 0].
        cov = CovarianceSet.from_matrices(np.eye(2)[None].astype(complex))
        res = exhaustive_search(cov, 1.0, (2, 1), 1)
        npt.assert_array_equal(res.combiner, [[1], [0]])

    def test_guard_on_large_problems(self):
        cov = CovarianceSet.from_factors(np.zeros((1, 11, 1), dtype=complex))
        with pytest.raises(DimensionGuardError):
            exhaustive_search(cov, 1.0, (11, 2), 1)
        assert 11 * 2 > MAX_EXHAUSTIVE_BITS

    def test_enumeration_count_and_optimality(self):
        rng = np.random.default_rng(6)
        cov = _random_cov(rng, k=2, n=3, m=2)
        res = exhaustive_search(cov, 1.0, (3, 2), 2)
        assert res.enumerated == 2 ** 6
        assert res.evaluations <= res.enumerated
        # No feasible candidate can beat it.
        for code in range(res.enumerated):
            bits = [(code >> i) & 1 for i in range(6)]
            mat = unvec_combiner(np.array(bits, dtype=np.int8), 3)
            if is_feasible(mat, 2):
                assert analog_objective(mat, cov, 1.0) <= res.objective + 1e-10


def test_search_hierarchy_is_ordered():
    # Exhaustive >= tabu and exhaustive >= random on every instance, since the
    # exhaustive optimum dominates all feasible binary combiners.
    rng = np.random.default_rng(7)
    for trial in range(5):
        cov = _random_cov(rng, k=2, n=4, m=2)
        es = exhaustive_search(cov, 1.0, (4, 2), 2)
        ts = tabu_search(cov, 1.0, default_initial_combiner(4, 2, 2), 2)
        rnd = analog_objective(random_combiner(rng, (4, 2), 2), cov, 1.0)
        assert es.objective >= ts.objective - 1e-10
        assert es.objective >= rnd - 1e-10


class TestRelaxedGradient:
    def test_matches_finite_differences(self):
        rng = np.random.default_rng(8)
        cov = _random_cov(rng, k=3, n=4, m=2)
        w = rng.uniform(0.05, 0.95, (4, 2))
        grad = relaxed_gradient(w, cov, 0.5)
        step = 1e-6
        fd = np.zeros_like(w)
        for i in range(4):
            for j in range(2):
                up = w.copy()
                up[i, j] += step
                dn = w.copy()
                dn[i, j] -= step
                fd[i, j] = (
                    analog_objective(up, cov, 0.5) - analog_objective(dn, cov, 0.5)
                ) / (2 * step)
        npt.assert_allclose(grad, fd, rtol=1e-4, atol=1e-8)

    def test_vanishes_when_column_space_is_complete(self):
        # A full-rank square combiner already spans everything; the objective
        # is locally constant and the gradient must be exactly zero.
        rng = np.random.default_rng(9)
        cov = _random_cov(rng, k=2, n=3, m=2)
        w = rng.uniform(0.1, 0.9, (3, 3)) + np.eye(3)
        grad = relaxed_gradient(w, cov, 1.0)
        npt.assert_allclose(grad, 0.0, atol=1e-12)

    def test_handles_rank_deficient_points(self):
        cov = _random_cov(np.random.default_rng(10), k=2, n=4, m=2)
        w = np.ones((4, 2)) * 0.5  # rank 1
        grad = relaxed_gradient(w, cov, 1.0)
        assert np.all(np.isfinite(grad))

    def test_shape_checks(self):
        cov = _random_cov(np.random.default_rng(11), k=2, n=4, m=2)
        with pytest.raises(ValueError):
            relaxed_gradient(np.ones((3, 2)), cov, 1.0)
        with pytest.raises(ValueError):
            relaxed_gradient(np.ones((4, 2)), cov, 0.0)


class TestPgaRelaxed:
    def test_improves_and_stays_in_box(self):
        rng = np.random.default_rng(12)
        cov = _random_cov(rng, k=3, n=4, m=2)
        start = rng.uniform(0.0, 1.0, (4, 2))
        out = pga_relaxed(cov, 1.0, start)
        assert out.shape == (4, 2)
        assert np.all(out >= 0.0) and np.all(out <= 1.0)
        assert analog_objective(out, cov, 1.0) >= analog_objective(start, cov, 1.0) - 1e-12

    def test_clips_out_of_box_start(self):
        cov = _random_cov(np.random.default_rng(13))
        out = pga_relaxed(cov, 1.0, 5.0 * np.ones((4, 2)), PgaConfig(max_iterations=3))
        assert np.all(out <= 1.0)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            PgaConfig(step_scale=0.0)
        with pytest.raises(ValueError):
            PgaConfig(max_iterations=0)
        with pytest.raises(ValueError):
            PgaConfig(convergence_tol=0.0)


class TestRoundAndRepair:
    def test_feasible_threshold_passes_through(self):
        relaxed = np.array([[0.9, 0.1], [0.2, 0.8]])
        npt.assert_array_equal(round_and_repair(relaxed, 2), [[1, 0], [0, 1]])

    def test_repairs_rank_by_flipping_nearest_to_half(self):
        # All entries round to zero; the first column-major entry is flipped.
        relaxed = np.full((3, 2), 0.4)
        out = round_and_repair(relaxed, 1)
        npt.assert_array_equal(out, [[1, 0], [0, 0], [0, 0]])

    def test_repairs_duplicate_columns(self):
        relaxed = np.full((2, 2), 0.6)  # rounds to all ones, rank 1
        out = round_and_repair(relaxed, 2)
        npt.assert_array_equal(out, [[0, 1], [1, 1]])
        assert is_feasible(out, 2)

    def test_rejects_impossible_rank_floor(self):
        with pytest.raises(ValueError):
            round_and_repair(np.ones((2, 3)), 3)


class TestPgaAidedTabu:
    def test_deterministic_given_seed(self):
        cov = _random_cov(np.random.default_rng(14))
        a = pga_aided_tabu(cov, 1.0, (4, 2), 2, rng=99)
        b = pga_aided_tabu(cov, 1.0, (4, 2), 2, rng=99)
        npt.assert_array_equal(a.combiner, b.combiner)
        assert a.objective == b.objective
        assert a.evaluations == b.evaluations

    def test_result_is_feasible_and_counts_both_phases(self):
        cov = _random_cov(np.random.default_rng(15))
        res = pga_aided_tabu(cov, 1.0, (4, 2), 2, rng=0)
        assert is_feasible(res.combiner, 2)
        traj = np.asarray(res.trajectory)
        assert np.all(np.diff(traj) >= 0)
        # At least the relaxed start/step evaluations plus the tabu initial one.
        assert res.evaluations >= 3


def test_random_combiner_feasible_and_reproducible():
    a = random_combiner(np.random.default_rng(16), (5, 2), 2)
    b = random_combiner(np.random.default_rng(16), (5, 2), 2)
    npt.assert_array_equal(a, b)
    assert is_feasible(a, 2)
    assert set(np.unique(a)).issubset({0, 1})
    with pytest.raises(ValueError):
        random_combiner(np.random.default_rng(0), (2, 3), 1)  # n_rf > n_rx


class TestPsBaseline:
    def test_unit_modulus_and_shape(self):
        rng = np.random.default_rng(17)
        channels = (rng.standard_normal((5, 4, 6)) + 1j * rng.standard_normal((5, 4, 6)))
        w = ps_baseline_combiner(channels, 2)
        assert w.shape == (4, 2)
        npt.assert_allclose(np.abs(w), 1.0, rtol=1e-12)

    def test_uses_center_subcarrier(self):
        rng = np.random.default_rng(18)
        channels = np.zeros((3, 3, 3), dtype=complex)
        channels[0] = rng.standard_normal((3, 3))
        channels[2] = rng.standard_normal((3, 3))
        center = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        channels[1] = center  # ceil(3/2) = 2nd subcarrier, index 1
        w = ps_baseline_combiner(channels, 2)
        u, _, _ = np.linalg.svd(center)
        npt.assert_allclose(w, np.exp(1j * np.angle(u[:, :2])), atol=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            ps_baseline_combiner(np.ones((2, 2)), 1)  # missing subcarrier axis
        with pytest.raises(ValueError):
            ps_baseline_combiner(np.ones((2, 3, 3), dtype=complex), 4)
