"""Tests for the Euclidean solvers against closed forms and the grid oracle."""
import numpy as np
import pytest

from frechet_lab.errors import OrderBelowOne, WeightSumZero
from frechet_lab.euclidean import (
    EuclideanProblem,
    SolverConfig,
    general_r_descent,
    geometric_median_weiszfeld,
    gradient,
    grid_oracle,
    objective_value,
    solve,
    weighted_mean_r2,
)

FERMAT_T = (3 - np.sqrt(3)) / 6  # stationary point of the unit right triangle


def random_problem(rng, order=None, n_max=6, d_max=3):
    n = int(rng.integers(1, n_max + 1))
    d = int(rng.integers(1, d_max + 1))
    pts = rng.normal(size=(n, d))
    w = rng.uniform(0.2, 3.0, size=n)
    if order is None:
        order = float(rng.uniform(2.0, 4.0))
    return EuclideanProblem(pts, w, order)


class TestProblemValidation:
    def test_weight_sum_zero(self):
        with pytest.raises(WeightSumZero):
            EuclideanProblem([[0.0], [1.0]], [0.0, 0.0], 2)

    def test_negative_weight(self):
        with pytest.raises(ValueError):
            EuclideanProblem([[0.0]], [-1.0], 2)

    def test_order_below_one(self):
        with pytest.raises(OrderBelowOne):
            EuclideanProblem([[0.0]], [1.0], 0.5)

    def test_weight_count_mismatch(self):
        with pytest.raises(ValueError):
            EuclideanProblem([[0.0], [1.0]], [1.0], 2)

    def test_bad_config(self):
        with pytest.raises(ValueError):
            SolverConfig(tol=0.0)


class TestWeightedMeanR2:
    def test_two_points_weighted(self):
        sol = weighted_mean_r2(EuclideanProblem([[0.0], [1.0]], [1, 3], 2))
        assert sol.minimizer[0] == pytest.approx(0.75)
        assert sol.converged and sol.iterations == 0

    def test_all_points_equal(self):
        p = np.array([2.0, -1.0])
        sol = weighted_mean_r2(EuclideanProblem([p, p, p], [1, 2, 3], 2))
        assert np.allclose(sol.minimizer, p)
        assert sol.objective == 0.0

    def test_centroid_of_triangle(self):
        sol = weighted_mean_r2(
            EuclideanProblem([(0, 0), (1, 0), (0, 1)], [1, 1, 1], 2)
        )
        assert np.allclose(sol.minimizer, [1 / 3, 1 / 3])

    def test_wrong_order_rejected(self):
        with pytest.raises(ValueError):
            weighted_mean_r2(EuclideanProblem([[0.0]], [1.0], 1))


class TestWeiszfeld:
    def test_collinear_median_is_middle_point(self):
        sol = geometric_median_weiszfeld(
            EuclideanProblem([[0.0], [1.0], [10.0]], [1, 1, 1], 1)
        )
        assert sol.minimizer[0] == pytest.approx(1.0, abs=1e-8)
        assert sol.converged

    def test_fermat_point_of_unit_right_triangle(self):
        sol = geometric_median_weiszfeld(
            EuclideanProblem([(0, 0), (1, 0), (0, 1)], [1, 1, 1], 1)
        )
        assert np.allclose(sol.minimizer, [FERMAT_T, FERMAT_T], atol=1e-8)

    def test_majority_weight_pins_the_median_to_that_anchor(self):
        sol = geometric_median_weiszfeld(
            EuclideanProblem([(0, 0), (1, 1)], [5, 1], 1)
        )
        assert np.allclose(sol.minimizer, [0, 0], atol=1e-6)

    def test_start_on_anchor_with_balanced_pull_stays(self):
        # centroid of {0,1,2} is the anchor 1; the subgradient test accepts it
        sol = geometric_median_weiszfeld(
            EuclideanProblem([[0.0], [1.0], [2.0]], [1, 1, 1], 1)
        )
        assert sol.minimizer[0] == 1.0
        assert sol.converged

    def test_single_point(self):
        sol = geometric_median_weiszfeld(EuclideanProblem([[3.0, 4.0]], [2.0], 1))
        assert np.allclose(sol.minimizer, [3, 4])
        assert sol.objective == 0.0

    def test_two_equal_weights_returns_midpoint(self):
        sol = geometric_median_weiszfeld(
            EuclideanProblem([(0, 0), (2, 0)], [1, 1], 1)
        )
        assert np.allclose(sol.minimizer, [1, 0], atol=1e-9)

    def test_wrong_order_rejected(self):
        with pytest.raises(ValueError):
            geometric_median_weiszfeld(EuclideanProblem([[0.0]], [1.0], 2))


class TestGeneralRDescent:
    def test_r2_matches_closed_form(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            prob = random_problem(rng, order=2.0)
            cf = weighted_mean_r2(prob)
            gd = general_r_descent(prob)
            assert np.allclose(gd.minimizer, cf.minimizer, atol=1e-8)

    def test_r15_symmetric_pair(self):
        sol = general_r_descent(EuclideanProblem([[0.0], [1.0]], [1, 1], 1.5))
        assert sol.minimizer[0] == pytest.approx(0.5, abs=1e-9)

    def test_r3_symmetric_pair(self):
        sol = general_r_descent(EuclideanProblem([(0, 0), (2, 0)], [1, 1], 3))
        assert np.allclose(sol.minimizer, [1, 0], atol=1e-9)

    def test_r3_asymmetric_weights(self):
        # stationarity of |y|^3 + 2|1-y|^3 gives y = 2 - sqrt(2)
        sol = general_r_descent(EuclideanProblem([[0.0], [1.0]], [1, 2], 3))
        assert sol.minimizer[0] == pytest.approx(2 - np.sqrt(2), abs=1e-9)
        assert sol.converged

    def test_r1_delegates_to_weiszfeld(self):
        prob = EuclideanProblem([[0.0], [1.0], [10.0]], [1, 1, 1], 1)
        assert general_r_descent(prob).minimizer[0] == pytest.approx(1.0, abs=1e-8)

    def test_gradient_norm_at_return(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            prob = random_problem(rng)
            sol = general_r_descent(prob)
            assert sol.converged
            assert np.linalg.norm(gradient(prob, sol.minimizer)) <= 1e-10


class TestGradient:
    def test_matches_finite_differences(self):
        rng = np.random.default_rng(123)
        step = 1e-6
        for _ in range(100):
            prob = random_problem(rng, order=float(rng.uniform(2.0, 4.0)))
            y = rng.normal(size=prob.dim)
            g = gradient(prob, y)
            fd = np.empty_like(g)
            for k in range(prob.dim):
                e = np.zeros(prob.dim)
                e[k] = step
                fd[k] = (
                    objective_value(prob, y + e) - objective_value(prob, y - e)
                ) / (2 * step)
            denom = max(np.linalg.norm(fd), 1.0)
            assert np.linalg.norm(g - fd) / denom < 1e-5

    def test_zero_at_anchor_for_smooth_orders(self):
        prob = EuclideanProblem([(0, 0), (2, 0)], [1, 1], 3)
        g = gradient(prob, np.array([0.0, 0.0]))
        assert np.all(np.isfinite(g))


class TestGridOracle:
    def test_never_beats_the_solver(self):
        rng = np.random.default_rng(77)
        for _ in range(15):
            prob = random_problem(rng, order=float(rng.choice([1.0, 1.5, 2.0, 3.0])))
            sol = solve(prob)
            lo = prob.points.min(axis=0) - 0.5
            hi = prob.points.max(axis=0) + 0.5
            oracle = grid_oracle(prob, (lo, hi), 41)
            assert sol.objective <= oracle.objective + 1e-6

    def test_single_point_snaps_to_nearest_node(self):
        prob = EuclideanProblem([[0.30, 0.30]], [1.0], 2)
        oracle = grid_oracle(prob, ((0, 0), (1, 1)), 11)
        assert np.allclose(oracle.minimizer, [0.3, 0.3])

    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            grid_oracle(EuclideanProblem([[0.0]], [1.0], 2), ((0,), (1,)), 1)


class TestOperatorProperties:
    def test_proportionality_scales_objective_and_keeps_minimizer(self):
        rng = np.random.default_rng(9)
        for _ in range(15):
            prob = random_problem(rng, order=float(rng.choice([1.0, 1.5, 2.0, 3.0])))
            c = float(rng.uniform(0.5, 4.0))
            scaled = EuclideanProblem(prob.points, c * prob.weights, prob.order)
            a, b = solve(prob), solve(scaled)
            # gradient-norm stopping localizes each run to O(tol) around the
            # optimum, so compare at a small multiple of the tolerance
            assert np.linalg.norm(a.minimizer - b.minimizer) < 1e-7
            if a.objective > 0:
                assert b.objective == pytest.approx(c * a.objective, rel=1e-9)

    def test_median_inequality_and_euclidean_half_bound(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            d = int(rng.integers(1, 4))
            x, y, xi = rng.normal(size=(3, d))
            mid = geometric_median_weiszfeld(
                EuclideanProblem([x, y], [1, 1], 1)
            ).minimizer
            lhs = np.linalg.norm(xi - mid)
            dx, dy = np.linalg.norm(xi - x), np.linalg.norm(xi - y)
            assert lhs <= dx + dy + 1e-9
            # the classical half-factor version holds in Euclidean space
            assert lhs <= 0.5 * (dx + dy) + 1e-9

    def test_r_order_bound(self):
        rng = np.random.default_rng(22)
        for r in (1.0, 1.5, 2.0, 3.0):
            for _ in range(50):
                d = int(rng.integers(1, 4))
                x, y, xi = rng.normal(size=(3, d))
                m = solve(EuclideanProblem([x, y], [1, 1], r)).minimizer
                lhs = np.linalg.norm(xi - m) ** r
                rhs = 2 ** (r - 1) * (
                    np.linalg.norm(xi - x) ** r + np.linalg.norm(xi - y) ** r
                )
                assert lhs <= rhs + 1e-9
