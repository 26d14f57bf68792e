"""Weighted Fréchet mean sets of order r over finite metric spaces.

The mean of weighted subset arguments (w_1, A_1), ..., (w_k, A_k) is the
set of points minimizing  sum_i w_i * d(A_i, y)^r  over the whole space.
Minimization is exhaustive: spaces at desk scale are small and exactness
matters more than speed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AllWeightsZero, OrderBelowOne
from .metric import (
    FiniteMetricSpace,
    Subset,
    load_space,
    point_subset_distance,
    validate_metric,
    ValidationReport,
)
from .errors import InvalidMetric

# Relative slack under which two objective values count as tied.  Exact
# argmin ties are unreliable in floating point; shortest-path closures
# in particular create exactly additive distances.
TIE_TOL = 1e-9


def tie_tolerance(min_objective: float) -> float:
    return TIE_TOL * (1.0 + abs(min_objective))


@dataclass(frozen=True)
class WeightedArgument:
    weight: float
    arg: Subset

    def __post_init__(self):
        if self.weight < 0.0:
            raise ValueError(f"argument weight must be >= 0, got {self.weight}")


@dataclass(frozen=True)
class FrechetProblem:
    """Order r >= 1 plus a nonempty weighted argument list."""

    order: float
    args: tuple[WeightedArgument, ...]

    def __init__(self, order: float, args: Iterable):
        order = float(order)
        if order < 1.0:
            raise OrderBelowOne(f"order must be >= 1, got {order}")
        norm = []
        for a in args:
            if not isinstance(a, WeightedArgument):
                w, s = a
                a = WeightedArgument(float(w), s if isinstance(s, Subset) else Subset(s))
            norm.append(a)
        if not norm:
            raise ValueError("problem needs at least one argument")
        if not any(a.weight > 0.0 for a in norm):
            raise AllWeightsZero(
                "all weights are zero: the objective is identically 0 "
                "and every point is vacuously a minimizer"
            )
        # canonical argument order makes the accumulated objective, and
        # therefore the mean set, exactly invariant under permutations
        norm.sort(key=lambda a: (a.arg.sorted, a.weight))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "args", tuple(norm))


@dataclass(frozen=True)
class FrechetMeanSet:
    """Full argmin set plus the attained minimum objective."""

    minimizers: frozenset[int]
    objective: float

    @property
    def representative(self) -> int:
        """Deterministic pick: the minimizer with the lowest point index."""
        return min(self.minimizers)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.minimizers))


def objective(space: FiniteMetricSpace, problem: FrechetProblem, y: int) -> float:
    """Objective at a single point, via plain Python sums.

    Deliberately independent from the vectorized scan in mean_set so the
    two can cross-check each other.
    """
    space.check_index(y)
    return sum(
        a.weight * point_subset_distance(space, y, a.arg) ** problem.order
        for a in problem.args
    )


def objective_vector(space: FiniteMetricSpace, problem: FrechetProblem) -> np.ndarray:
    """Objective at every point of the space, as one vector."""
    total = np.zeros(space.n)
    for a in problem.args:
        space.check_subset(a.arg)
        if a.weight == 0.0:
            continue
        dvec = space.dist[:, a.arg.sorted].min(axis=1)
        total += a.weight * dvec**problem.order
    return total


def mean_set(space: FiniteMetricSpace, problem: FrechetProblem) -> FrechetMeanSet:
    """Exhaustive Fréchet mean set: all points within tie tolerance of the minimum."""
    values = objective_vector(space, problem)
    best = float(values.min())
    members = np.flatnonzero(values <= best + tie_tolerance(best))
    return FrechetMeanSet(frozenset(int(i) for i in members), best)


def representative(mean: FrechetMeanSet) -> int:
    return mean.representative


def binary_mean(
    space: FiniteMetricSpace,
    r: float,
    alpha: float,
    a: Subset,
    beta: float,
    b: Subset,
) -> FrechetMeanSet:
    """Two-argument mean  alpha*A (+)_r beta*B."""
    return mean_set(space, FrechetProblem(r, [(alpha, a), (beta, b)]))


# ---------------------------------------------------------------------------
# Problem JSON
# ---------------------------------------------------------------------------

def problem_from_dict(obj: dict) -> tuple[FiniteMetricSpace, FrechetProblem]:
    """Build (space, problem) from the problem JSON structure.

    ``space`` is either an inline {"labels": [...], "matrix": [[...]]}
    object or a path to a space file; subsets are lists of labels.
    """
    spec = obj["space"]
    if isinstance(spec, str):
        space = load_space(spec)
    else:
        result = validate_metric(spec["matrix"], spec["labels"])
        if isinstance(result, ValidationReport):
            raise InvalidMetric(result)
        space = result
    args = []
    for entry in obj["args"]:
        members = [space.index_of(str(name)) for name in entry["subset"]]
        args.append((float(entry["weight"]), Subset(members)))
    return space, FrechetProblem(float(obj["r"]), args)


def load_problem(path: str) -> tuple[FiniteMetricSpace, FrechetProblem]:
    with open(path, encoding="utf-8") as fh:
        return problem_from_dict(json.load(fh))
