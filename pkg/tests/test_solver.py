"""Tests for the exhaustive Fréchet mean solver."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frechet_lab.errors import AllWeightsZero, IndexOutOfRange, OrderBelowOne
from frechet_lab.metric import Subset, figure1_space, random_space, validate_metric
from frechet_lab.solver import (
    FrechetProblem,
    binary_mean,
    mean_set,
    objective,
    problem_from_dict,
    representative,
    tie_tolerance,
)


@pytest.fixture(scope="module")
def fig1():
    return figure1_space()


@pytest.fixture(scope="module")
def line015():
    """Three points of the real line, 0 / 1 / 5, absolute-value distances."""
    s = validate_metric([[0, 1, 5], [1, 0, 4], [5, 4, 0]], ["0", "1", "5"])
    return s


def naive_mean_set(space, problem):
    """Independent re-computation: plain scan over objective() per point."""
    values = [objective(space, problem, y) for y in range(space.n)]
    best = min(values)
    tol = tie_tolerance(best)
    return frozenset(y for y, v in enumerate(values) if v <= best + tol), best


class TestObjective:
    def test_fig1_r1_at_m(self, fig1):
        prob = FrechetProblem(1, [(1, Subset([1])), (1, Subset([2]))])
        assert objective(fig1, prob, 3) == pytest.approx(2.0)

    def test_zero_when_every_argument_contains_y(self, fig1):
        prob = FrechetProblem(2, [(1, Subset([0, 1])), (3, Subset([1, 3]))])
        assert objective(fig1, prob, 1) == 0.0

    def test_fig1_r2_at_xi(self, fig1):
        prob = FrechetProblem(2, [(1, Subset([1])), (1, Subset([2]))])
        assert objective(fig1, prob, 0) == pytest.approx(2.0)

    def test_out_of_range(self, fig1):
        prob = FrechetProblem(1, [(1, Subset([0]))])
        with pytest.raises(IndexOutOfRange):
            objective(fig1, prob, 11)


class TestMeanSet:
    def test_fig1_r1_every_point_minimizes(self, fig1):
        mean = binary_mean(fig1, 1, 1, Subset([1]), 1, Subset([2]))
        assert mean.minimizers == frozenset({0, 1, 2, 3})
        assert mean.objective == 2.0

    def test_fig1_r2_xi_and_m(self, fig1):
        # brute force over the 4 candidates: x -> 4, y -> 4, ξ -> 2, m -> 2
        mean = binary_mean(fig1, 2, 1, Subset([1]), 1, Subset([2]))
        assert mean.minimizers == frozenset({0, 3})
        assert mean.objective == 2.0

    def test_identity_element(self, fig1):
        for a in (Subset([1]), Subset([0, 3]), Subset([2, 1])):
            mean = mean_set(fig1, FrechetProblem(1.5, [(1, a), (1, fig1.all_points())]))
            assert mean.minimizers == a.members

    def test_all_weights_zero_rejected(self, fig1):
        with pytest.raises(AllWeightsZero):
            FrechetProblem(1, [(0.0, Subset([0])), (0.0, Subset([1]))])

    def test_order_below_one_rejected(self):
        with pytest.raises(OrderBelowOne):
            FrechetProblem(0.5, [(1, Subset([0]))])

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            FrechetProblem(1, [(-1.0, Subset([0]))])

    def test_foreign_subset_raises(self, fig1):
        prob = FrechetProblem(1, [(1, Subset([17]))])
        with pytest.raises(IndexOutOfRange):
            mean_set(fig1, prob)

    @given(st.integers(0, 100_000))
    @settings(max_examples=60, deadline=None)
    def test_matches_naive_oracle(self, seed):
        rng = np.random.default_rng(seed)
        space = random_space(seed % 9973, int(rng.integers(2, 13)), "metric-repair")
        k = int(rng.integers(1, 4))
        args = []
        for _ in range(k):
            size = int(rng.integers(1, space.n + 1))
            members = Subset(int(i) for i in rng.choice(space.n, size, replace=False))
            args.append((float(rng.uniform(0.1, 5.0)), members))
        prob = FrechetProblem(float(rng.choice([1.0, 1.5, 2.0, 3.0])), args)
        mean = mean_set(space, prob)
        oracle_set, oracle_best = naive_mean_set(space, prob)
        assert mean.minimizers == oracle_set
        assert mean.objective == pytest.approx(oracle_best, rel=1e-12, abs=1e-12)

    @given(st.integers(0, 100_000))
    @settings(max_examples=40, deadline=None)
    def test_representative_is_a_minimizer(self, seed):
        rng = np.random.default_rng(seed)
        space = random_space(seed % 997, int(rng.integers(2, 9)), "random-graph")
        a = Subset(int(i) for i in rng.choice(space.n, 2, replace=False))
        mean = mean_set(space, FrechetProblem(2, [(1, a)]))
        assert mean.minimizers
        assert mean.representative in mean.minimizers


class TestRepresentative:
    def test_lowest_index_wins(self, fig1):
        mean = binary_mean(fig1, 1, 1, Subset([1]), 1, Subset([2]))
        assert mean.representative == 0  # ξ sits at index 0
        assert representative(mean) == 0

    def test_singleton(self, fig1):
        mean = mean_set(fig1, FrechetProblem(1, [(1, Subset([3]))]))
        assert mean.minimizers == frozenset({3})
        assert mean.representative == 3

    def test_line_r2_pair(self, line015):
        mean = binary_mean(line015, 2, 1, Subset([0]), 1, Subset([1]))
        assert mean.minimizers == frozenset({0, 1})
        assert mean.representative == 0


class TestBinaryMean:
    def test_commutative(self, fig1):
        a, b = Subset([1]), Subset([2, 3])
        m1 = binary_mean(fig1, 1.5, 2.0, a, 3.0, b)
        m2 = binary_mean(fig1, 1.5, 3.0, b, 2.0, a)
        assert m1.minimizers == m2.minimizers
        assert m1.objective == m2.objective

    def test_idempotent(self, fig1):
        for a in (Subset([0]), Subset([1, 2]), Subset([0, 1, 2, 3])):
            mean = binary_mean(fig1, 2, 1, a, 1, a)
            assert mean.minimizers == a.members

    def test_proportionality(self, fig1):
        a, b = Subset([1]), Subset([2])
        m1 = binary_mean(fig1, 1, 1, a, 1, b)
        m3 = binary_mean(fig1, 1, 3, a, 3, b)
        assert m1.minimizers == m3.minimizers
        assert m3.objective == pytest.approx(3 * m1.objective, rel=1e-12)


class TestNonAssociativity:
    def test_line015_r2_witness(self, line015):
        """(0 ⊕ 1) ⊕ 5 vs 0 ⊕ (1 ⊕ 5) at order 2, lowest-index tie-break.

        Step by step over the 3 candidates:
        0⊕1 -> {0,1} rep 0;  0⊕5 -> {1} rep 1.
        1⊕5 -> {1,5} rep 1;  0⊕1 -> {0,1} rep 0.
        """
        s = line015

        def bmean(i, j):
            return binary_mean(s, 2, 1, Subset([i]), 1, Subset([j]))

        left = bmean(bmean(0, 1).representative, 2)
        right = bmean(0, bmean(1, 2).representative)
        assert left.representative == 1
        assert right.representative == 0


class TestProblemJson:
    def test_inline_space(self, line015):
        obj = {
            "space": {"labels": ["0", "1", "5"], "matrix": [[0, 1, 5], [1, 0, 4], [5, 4, 0]]},
            "r": 2,
            "args": [{"weight": 1, "subset": ["0"]}, {"weight": 1, "subset": ["1"]}],
        }
        space, prob = problem_from_dict(obj)
        mean = mean_set(space, prob)
        assert mean.minimizers == frozenset({0, 1})

    def test_space_by_path(self, tmp_path, fig1):
        from frechet_lab.metric import format_distance_csv

        path = tmp_path / "s.csv"
        path.write_text(format_distance_csv(fig1), encoding="utf-8")
        obj = {
            "space": str(path),
            "r": 1,
            "args": [{"weight": 1, "subset": ["x"]}, {"weight": 1, "subset": ["y"]}],
        }
        space, prob = problem_from_dict(obj)
        assert mean_set(space, prob).minimizers == frozenset({0, 1, 2, 3})
