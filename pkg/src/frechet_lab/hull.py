"""Convex hulls under the cumulative Fréchet mean operator.

A point y belongs to the order-r hull of a base set A when some
nonnegative weight vector over the points of A puts y into the weighted
Fréchet mean set.  Weights can be normalized to the simplex without
changing the argmin (proportionality), which turns membership into a
linear feasibility problem per candidate point: find alpha on the
simplex with  sum_i alpha_i d(a_i, y)^r <= sum_i alpha_i d(a_i, z)^r
for every z.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .errors import EmptySubset
from .metric import FiniteMetricSpace, Subset
from .solver import FrechetProblem, mean_set, objective, tie_tolerance

# Relative feasibility slack for LP membership, scaled by the largest
# r-th-power distance involved (mirrors the solver's tie tolerance).
FEAS_TOL = 1e-9


@dataclass(frozen=True)
class HullResult:
    members: frozenset[int]
    witnesses: dict  # member index -> weight tuple over base points
    base: tuple[int, ...]
    order: float

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def to_dict(self, space: FiniteMetricSpace) -> dict:
        return {
            "order": self.order,
            "base": [space.labels[i] for i in self.base],
            "members": [space.labels[i] for i in self.sorted()],
            "witnesses": {
                space.labels[i]: list(self.witnesses[i]) for i in self.sorted()
            },
        }


@dataclass(frozen=True)
class ConvexityReport:
    convex: bool
    counterexample: Optional[tuple] = None  # (combo indices, weights, escaping member)

    def to_dict(self, space: FiniteMetricSpace) -> dict:
        out: dict = {"convex": self.convex}
        if self.counterexample is not None:
            combo, weights, member = self.counterexample
            out["counterexample"] = {
                "points": [space.labels[i] for i in combo],
                "weights": list(weights),
                "escapes_to": space.labels[member],
            }
        return out


def _power_matrix(space: FiniteMetricSpace, base: tuple[int, ...], r: float) -> np.ndarray:
    return np.asarray(space.dist[list(base), :], dtype=float) ** r


def _candidate_witness(powers: np.ndarray, y: int, scale: float):
    """LP searching for simplex weights that make y a minimizer.

    Variables are (alpha_1..alpha_m, t); we minimize the worst violation
    t = max_z alpha.(D[:,y] - D[:,z]) over the scaled power matrix, so a
    nonpositive optimum certifies exact membership.  Returns the weight
    vector or None when the LP fails outright.
    """
    m, n = powers.shape
    if n == 1:
        return np.ones(1)
    rows = (powers[:, [y]] - powers) / scale  # (m, n); column y is zero
    cols = [z for z in range(n) if z != y]
    a_ub = np.concatenate([rows[:, cols].T, -np.ones((n - 1, 1))], axis=1)
    c = np.zeros(m + 1)
    c[m] = 1.0
    a_eq = np.concatenate([np.ones((1, m)), np.zeros((1, 1))], axis=1)
    bounds = [(0.0, 1.0)] * m + [(-1.0, None)]
    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=np.zeros(n - 1),
        A_eq=a_eq,
        b_eq=np.ones(1),
        bounds=bounds,
        method="highs",
    )
    if not res.success or res.fun > 10 * FEAS_TOL:
        return None
    alpha = np.clip(res.x[:m], 0.0, None)
    total = alpha.sum()
    if total <= 0.0:
        return None
    return alpha / total


def hull_members(space: FiniteMetricSpace, base: Subset, r: float) -> HullResult:
    """Exact hull of ``base``: all points with a certified witness weight.

    Each LP candidate weight vector is re-checked through mean_set; a
    point is kept when it lies in the witnessed mean set or its objective
    gap stays within the relative feasibility tolerance.
    """
    space.check_subset(base)
    base_sorted = base.sorted
    powers = _power_matrix(space, base_sorted, r)
    scale = 1.0 + float(powers.max())
    tol = FEAS_TOL * scale

    members: dict[int, tuple[float, ...]] = {}
    for y in range(space.n):
        alpha = _candidate_witness(powers, y, scale)
        if alpha is None:
            continue
        problem = FrechetProblem(
            r, [(float(a), Subset([p])) for a, p in zip(alpha, base_sorted)]
        )
        mean = mean_set(space, problem)
        gap = objective(space, problem, y) - mean.objective
        if y in mean.minimizers or gap <= tol:
            members[y] = tuple(float(a) for a in alpha)
    return HullResult(frozenset(members), members, base_sorted, float(r))


def simplex_grid(m: int, steps: int):
    """All weight vectors (k_1/steps, ..., k_m/steps) with sum k_i = steps."""
    for cuts in itertools.combinations(range(steps + m - 1), m - 1):
        parts = []
        prev = -1
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(steps + m - 2 - prev)
        yield tuple(p / steps for p in parts)


def hull_grid_oracle(
    space: FiniteMetricSpace, base: Subset, r: float, grid_steps: int
) -> frozenset[int]:
    """Union of mean sets over all simplex-grid weight vectors.

    Sampling only ever exhibits feasible witnesses, so the result is a
    subset of hull_members at every resolution and converges to it as
    grid_steps grows.
    """
    if grid_steps < 2:
        raise ValueError("grid_steps must be >= 2")
    space.check_subset(base)
    base_sorted = base.sorted
    powers = _power_matrix(space, base_sorted, r)
    found: set[int] = set()
    for weights in simplex_grid(len(base_sorted), grid_steps):
        values = np.asarray(weights) @ powers
        best = float(values.min())
        hits = np.flatnonzero(values <= best + tie_tolerance(best))
        found.update(int(i) for i in hits)
    return frozenset(found)


def check_convexity(
    space: FiniteMetricSpace, subset: Subset, r: float, max_combo_size: int = 3
) -> ConvexityReport:
    """Search for weighted means of points of ``subset`` that escape it.

    Runs the exact membership machinery on every sub-collection up to
    max_combo_size; the first hull member outside the set is returned as
    the counterexample.  Combinations suffice: repeated points merge
    into a single combined weight.
    """
    space.check_subset(subset)
    points = subset.sorted
    for size in range(1, min(max_combo_size, len(points)) + 1):
        for combo in itertools.combinations(points, size):
            hull = hull_members(space, Subset(combo), r)
            escaped = sorted(hull.members - subset.members)
            if escaped:
                member = escaped[0]
                return ConvexityReport(
                    False, (combo, hull.witnesses[member], member)
                )
    return ConvexityReport(True)
