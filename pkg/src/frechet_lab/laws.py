"""Property checkers for the mean operator and its median inequalities.

Each checker evaluates one law or bound on concrete inputs and returns a
PropertyReport.  Bounds are checked for EVERY member of the mean set,
not just the representative.  Violations are data, not exceptions: the
sub-unit weight regime is expected to produce them, and the randomized
search harness exists to hunt for exactly that.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import OrderBelowOne, WeightBelowOne
from .metric import FiniteMetricSpace, STRATEGIES, Subset, figure1_space, random_space
from .solver import FrechetProblem, binary_mean, mean_set

# Relative slack for both violation and saturation detection: the two
# sides of every bound get the same treatment.
BOUND_TOL = 1e-9


def bound_tolerance(rhs: float) -> float:
    return BOUND_TOL * (1.0 + abs(rhs))


@dataclass(frozen=True)
class ViolationWitness:
    """Everything needed to replay one bound evaluation."""

    space: dict
    r: float
    weights: tuple[float, ...]
    args: tuple[tuple[int, ...], ...]
    xi: Optional[int]
    lhs: object
    rhs: object
    detail: str = ""
    member: Optional[int] = None
    trial: Optional[int] = None
    theorem_regime: bool = True

    def to_dict(self) -> dict:
        def plain(v):
            return list(v) if isinstance(v, tuple) else v

        return {
            "space": self.space,
            "r": self.r,
            "weights": list(self.weights),
            "args": [list(a) for a in self.args],
            "xi": self.xi,
            "lhs": plain(self.lhs),
            "rhs": plain(self.rhs),
            "detail": self.detail,
            "member": self.member,
            "trial": self.trial,
            "theorem_regime": self.theorem_regime,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ViolationWitness":
        def dense(v):
            return tuple(v) if isinstance(v, list) else v

        return cls(
            space=d["space"],
            r=d["r"],
            weights=tuple(d["weights"]),
            args=tuple(tuple(a) for a in d["args"]),
            xi=d["xi"],
            lhs=dense(d["lhs"]),
            rhs=dense(d["rhs"]),
            detail=d["detail"],
            member=d["member"],
            trial=d["trial"],
            theorem_regime=d["theorem_regime"],
        )


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of checking one property over some number of trials."""

    property_id: str
    trials: int
    failures: tuple[ViolationWitness, ...] = ()
    saturations: tuple[ViolationWitness, ...] = ()
    exhibits: tuple[ViolationWitness, ...] = ()
    failure_count: int = 0
    saturation_count: int = 0
    checks: dict = field(default_factory=dict)
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def theorem_regime_failure_count(self) -> int:
        return sum(1 for w in self.failures if w.theorem_regime)

    def to_dict(self) -> dict:
        return {
            "property": self.property_id,
            "trials": self.trials,
            "failures": [w.to_dict() for w in self.failures],
            "saturations": [w.to_dict() for w in self.saturations],
            "exhibits": [w.to_dict() for w in self.exhibits],
            "failure_count": self.failure_count,
            "saturation_count": self.saturation_count,
            "checks": self.checks,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "PropertyReport":
        return cls(
            property_id=d["property"],
            trials=d["trials"],
            failures=tuple(ViolationWitness.from_dict(w) for w in d["failures"]),
            saturations=tuple(ViolationWitness.from_dict(w) for w in d["saturations"]),
            exhibits=tuple(ViolationWitness.from_dict(w) for w in d["exhibits"]),
            failure_count=d["failure_count"],
            saturation_count=d["saturation_count"],
            checks=d["checks"],
            seed=d["seed"],
        )


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of the randomized counterexample search."""

    seed: int = 0
    trials: int = 1000
    n_range: tuple[int, int] = (2, 10)
    r_list: tuple[float, ...] = (1.0, 1.5, 2.0, 3.0)
    weight_range: tuple[float, float] = (1.0, 5.0)
    strategies: tuple[str, ...] = STRATEGIES
    combo_range: tuple[int, int] = (2, 6)
    max_recorded: int = 25

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.n_range[0] < 1 or self.n_range[0] > self.n_range[1]:
            raise ValueError("bad n_range")
        if any(r < 1.0 for r in self.r_list):
            raise OrderBelowOne("orders in r_list must be >= 1")
        if self.weight_range[0] <= 0.0 or self.weight_range[0] > self.weight_range[1]:
            raise ValueError("bad weight_range")
        for s in self.strategies:
            if s not in STRATEGIES:
                raise ValueError(f"unknown strategy {s!r}")


class _Collector:
    """Accumulates witnesses with deterministic truncation."""

    def __init__(self, max_recorded: Optional[int] = None):
        self.failures: list[ViolationWitness] = []
        self.saturations: list[ViolationWitness] = []
        self.exhibits: list[ViolationWitness] = []
        self.failure_count = 0
        self.saturation_count = 0
        self.checks: dict[str, int] = {}
        self.cap = max_recorded

    def tick(self, family: str, k: int = 1) -> None:
        self.checks[family] = self.checks.get(family, 0) + k

    def failure(self, w: ViolationWitness) -> None:
        self.failure_count += 1
        if self.cap is None or len(self.failures) < self.cap:
            self.failures.append(w)

    def saturation(self, w: ViolationWitness) -> None:
        self.saturation_count += 1
        if self.cap is None or len(self.saturations) < self.cap:
            self.saturations.append(w)

    def exhibit(self, w: ViolationWitness) -> None:
        if self.cap is None or len(self.exhibits) < self.cap:
            self.exhibits.append(w)

    def absorb(self, other: "_Collector") -> None:
        for w in other.failures:
            self.failure(w)
        self.failure_count += other.failure_count - len(other.failures)
        for w in other.saturations:
            self.saturation(w)
        self.saturation_count += other.saturation_count - len(other.saturations)
        for w in other.exhibits:
            self.exhibit(w)
        for fam, k in other.checks.items():
            self.tick(fam, k)

    def report(self, property_id: str, trials: int, seed=None) -> PropertyReport:
        return PropertyReport(
            property_id=property_id,
            trials=trials,
            failures=tuple(self.failures),
            saturations=tuple(self.saturations),
            exhibits=tuple(self.exhibits),
            failure_count=self.failure_count,
            saturation_count=self.saturation_count,
            checks=dict(sorted(self.checks.items())),
            seed=seed,
        )


def _judge(col: _Collector, lhs: float, rhs: float, witness: ViolationWitness) -> None:
    tol = bound_tolerance(rhs)
    if lhs > rhs + tol:
        col.failure(witness)
    elif abs(lhs - rhs) <= tol:
        col.saturation(witness)


# ---------------------------------------------------------------------------
# Bound evaluators (shared by the public checkers and the search harness)
# ---------------------------------------------------------------------------

def _eval_weighted_median(
    col: _Collector,
    space: FiniteMetricSpace,
    xi: int,
    x: int,
    y: int,
    alpha: float,
    beta: float,
    ref: dict,
    trial: Optional[int] = None,
) -> None:
    """d(xi, m) <= alpha d(x,xi) + beta d(xi,y) for every mean-set member m (r=1)."""
    regime = alpha >= 1.0 and beta >= 1.0
    detail = "median" if alpha == 1.0 and beta == 1.0 else "weighted-median"
    col.tick(detail)
    mean = binary_mean(space, 1.0, alpha, Subset([x]), beta, Subset([y]))
    rhs = alpha * space.distance(x, xi) + beta * space.distance(xi, y)
    for m in sorted(mean.minimizers):
        lhs = space.distance(xi, m)
        _judge(
            col,
            lhs,
            rhs,
            ViolationWitness(
                ref, 1.0, (alpha, beta), ((x,), (y,)), xi, lhs, rhs,
                detail=detail, member=m, trial=trial, theorem_regime=regime,
            ),
        )


def _eval_cumulative(
    col: _Collector,
    space: FiniteMetricSpace,
    xi: int,
    points: Sequence[int],
    weights: Sequence[float],
    r: float,
    ref: dict,
    trial: Optional[int] = None,
    detail: Optional[str] = None,
) -> None:
    """Countable-additivity style bound for the cumulative mean of order r.

    r = 1:  d(m, xi) <= sum_i w_i d(y_i, xi)
    r > 1:  d(m, xi)^r <= 2^(r-1) sum_i w_i d(y_i, xi)^r
    """
    if detail is None:
        detail = "countable-additivity" if r == 1.0 else "r-order-cumulative"
    col.tick(detail)
    weights = tuple(float(w) for w in weights)
    regime = all(w >= 1.0 for w in weights)
    problem = FrechetProblem(r, [(w, Subset([p])) for w, p in zip(weights, points)])
    mean = mean_set(space, problem)
    coef = 2.0 ** (r - 1.0)
    rhs = coef * sum(
        w * space.distance(p, xi) ** r for w, p in zip(weights, points)
    )
    for m in sorted(mean.minimizers):
        lhs = space.distance(m, xi) ** r
        _judge(
            col,
            lhs,
            rhs,
            ViolationWitness(
                ref, r, weights, tuple((p,) for p in points), xi, lhs, rhs,
                detail=detail, member=m, trial=trial, theorem_regime=regime,
            ),
        )


def _eval_r_order(
    col: _Collector,
    space: FiniteMetricSpace,
    xi: int,
    x: int,
    y: int,
    r: float,
    ref: dict,
    trial: Optional[int] = None,
) -> None:
    """d(xi, m)^r <= 2^(r-1) (d(x,xi)^r + d(xi,y)^r) over the order-r mean set."""
    col.tick("r-order")
    mean = binary_mean(space, r, 1.0, Subset([x]), 1.0, Subset([y]))
    coef = 2.0 ** (r - 1.0)
    rhs = coef * (space.distance(x, xi) ** r + space.distance(xi, y) ** r)
    for m in sorted(mean.minimizers):
        lhs = space.distance(xi, m) ** r
        _judge(
            col,
            lhs,
            rhs,
            ViolationWitness(
                ref, r, (1.0, 1.0), ((x,), (y,)), xi, lhs, rhs,
                detail="r-order", member=m, trial=trial,
            ),
        )


def _eval_r_triangle(
    col: _Collector,
    space: FiniteMetricSpace,
    r: float,
    ref: dict,
    trial: Optional[int] = None,
) -> None:
    """Sanity layer: d(a,b)^r <= 2^(r-1)(d(a,c)^r + d(c,b)^r) on all triples.

    This holds in every metric space for every r >= 1; a violation here
    means the space failed validation, not that the bound is false.
    """
    col.tick("triangle-r")
    p = np.asarray(space.dist, dtype=float) ** r
    coef = 2.0 ** (r - 1.0)
    n = space.n
    for c in range(n):
        rhs = coef * (p[:, c : c + 1] + p[c : c + 1, :])
        slack = p - rhs
        bad = slack > BOUND_TOL * (1.0 + rhs)
        for a, b in zip(*np.nonzero(bad)):
            if a < b and c != a and c != b:
                col.failure(
                    ViolationWitness(
                        ref, r, (), ((int(a),), (int(b),), (c,)), None,
                        float(p[a, b]), float(rhs[a, b]),
                        detail="triangle-r", trial=trial,
                    )
                )


def _eval_operator_laws(
    col: _Collector,
    space: FiniteMetricSpace,
    rng: np.random.Generator,
    r: float,
    weight_range: tuple[float, float],
    ref: dict,
    trial: Optional[int] = None,
) -> None:
    """One sampled scenario for each operator law, plus a non-associativity probe."""
    n = space.n

    def sample_subset() -> Subset:
        size = int(rng.integers(1, n + 1))
        return Subset(int(i) for i in rng.choice(n, size=size, replace=False))

    def fail(detail, weights, args, lhs, rhs):
        col.failure(
            ViolationWitness(
                ref, r, tuple(weights), tuple(a.sorted for a in args), None,
                lhs, rhs, detail=detail, trial=trial,
            )
        )

    a, b = sample_subset(), sample_subset()
    w = rng.uniform(*weight_range, size=3)

    # commutativity: the mean set ignores argument order (set equality)
    col.tick("commutativity")
    args = [(w[0], a), (w[1], b), (w[2], sample_subset())]
    perm = [args[i] for i in rng.permutation(len(args))]
    m1 = mean_set(space, FrechetProblem(r, args))
    m2 = mean_set(space, FrechetProblem(r, perm))
    if m1.minimizers != m2.minimizers:
        fail("commutativity", w, [s for _, s in args], m1.sorted(), m2.sorted())

    # idempotency: any number of copies of A collapses to A
    col.tick("idempotency")
    copies = int(rng.integers(1, 5))
    mi = mean_set(space, FrechetProblem(r, [(1.0, a)] * copies))
    if mi.minimizers != a.members:
        fail("idempotency", (1.0,) * copies, [a], mi.sorted(), a.sorted)

    # proportionality: scaling every weight leaves the argmin set alone
    col.tick("proportionality")
    c = float(rng.uniform(0.5, 4.0))
    base = FrechetProblem(r, [(w[0], a), (w[1], b)])
    scaled = FrechetProblem(r, [(c * w[0], a), (c * w[1], b)])
    mb, ms = mean_set(space, base), mean_set(space, scaled)
    if mb.minimizers != ms.minimizers:
        fail("proportionality", (c, w[0], w[1]), [a, b], mb.sorted(), ms.sorted())
    elif ms.objective != 0.0 and abs(ms.objective - c * mb.objective) > BOUND_TOL * (
        1.0 + abs(ms.objective)
    ):
        fail("proportionality", (c, w[0], w[1]), [a, b], ms.objective, c * mb.objective)

    # identity element: combining with the whole space changes nothing
    col.tick("identity-element")
    me = mean_set(space, FrechetProblem(r, [(1.0, a), (1.0, space.all_points())]))
    if me.minimizers != a.members:
        fail("identity-element", (1.0, 1.0), [a], me.sorted(), a.sorted)

    # non-associativity probe: a differing witness is recorded, not required
    col.tick("non-associativity")
    x, y, z = (int(i) for i in rng.integers(0, n, size=3))
    left_inner = binary_mean(space, r, 1.0, Subset([x]), 1.0, Subset([y]))
    left = binary_mean(
        space, r, 1.0, Subset([left_inner.representative]), 1.0, Subset([z])
    )
    right_inner = binary_mean(space, r, 1.0, Subset([y]), 1.0, Subset([z]))
    right = binary_mean(
        space, r, 1.0, Subset([x]), 1.0, Subset([right_inner.representative])
    )
    if left.representative != right.representative:
        col.exhibit(
            ViolationWitness(
                ref, r, (1.0, 1.0), ((x,), (y,), (z,)), None,
                left.representative, right.representative,
                detail="non-associativity", trial=trial,
            )
        )


# ---------------------------------------------------------------------------
# Public checkers
# ---------------------------------------------------------------------------

def check_operator_laws(
    space: FiniteMetricSpace, config: Optional[SearchConfig] = None
) -> PropertyReport:
    """Verify commutativity, idempotency, proportionality and the identity
    element on sampled subsets and weights; record any non-associativity
    witness encountered along the way."""
    config = config or SearchConfig(trials=8)
    col = _Collector(config.max_recorded)
    ref = space.ref()
    for trial in range(config.trials):
        rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(trial,)))
        r = float(config.r_list[trial % len(config.r_list)])
        _eval_operator_laws(col, space, rng, r, config.weight_range, ref, trial)
    return col.report("operator-laws", config.trials, config.seed)


def check_median_inequality(
    space: FiniteMetricSpace, xi: int, x: int, y: int
) -> PropertyReport:
    """First-order bound d(xi, x (+) y) <= d(x,xi) + d(xi,y), every member."""
    for i in (xi, x, y):
        space.check_index(i)
    col = _Collector()
    _eval_weighted_median(col, space, xi, x, y, 1.0, 1.0, space.ref())
    return col.report("median-inequality", 1)


def check_weighted_median(
    space: FiniteMetricSpace, xi: int, x: int, y: int, alpha: float, beta: float
) -> PropertyReport:
    """Weighted first-order bound; weights below 1 are out of the theorem
    regime and rejected (see weight_necessity_demo for that regime)."""
    if alpha < 1.0 or beta < 1.0:
        raise WeightBelowOne(
            f"weighted median bound requires alpha, beta >= 1 "
            f"(got {alpha}, {beta}); use weight_necessity_demo for weights < 1"
        )
    for i in (xi, x, y):
        space.check_index(i)
    col = _Collector()
    _eval_weighted_median(col, space, xi, x, y, float(alpha), float(beta), space.ref())
    return col.report("weighted-median-inequality", 1)


def check_countable_additivity(
    space: FiniteMetricSpace,
    xi: int,
    points: Sequence[int],
    weights: Optional[Sequence[float]] = None,
) -> PropertyReport:
    """Cumulative first-order bound d((+)_i w_i y_i, xi) <= sum w_i d(y_i, xi)."""
    points = [int(p) for p in points]
    space.check_index(xi)
    for p in points:
        space.check_index(p)
    if weights is None:
        weights = [1.0] * len(points)
    if any(w < 1.0 for w in weights):
        raise WeightBelowOne("countable additivity requires all weights >= 1")
    col = _Collector()
    _eval_cumulative(col, space, xi, points, weights, 1.0, space.ref())
    return col.report("countable-additivity", 1)


def check_r_order(
    space: FiniteMetricSpace, xi: int, x: int, y: int, r: float
) -> PropertyReport:
    """Order-r bound with the 2^(r-1) factor, plus the all-triples
    order-r triangle inequality as an independent sanity layer."""
    if r < 1.0:
        raise OrderBelowOne(f"order must be >= 1, got {r}")
    for i in (xi, x, y):
        space.check_index(i)
    col = _Collector()
    ref = space.ref()
    _eval_r_order(col, space, xi, x, y, float(r), ref)
    _eval_r_triangle(col, space, float(r), ref)
    return col.report("r-order-inequality", 1)


def check_r_order_cumulative(
    space: FiniteMetricSpace,
    xi: int,
    points: Sequence[int],
    weights: Sequence[float],
    r: float,
) -> PropertyReport:
    """Weighted cumulative order-r bound (weights >= 1)."""
    if r < 1.0:
        raise OrderBelowOne(f"order must be >= 1, got {r}")
    if any(w < 1.0 for w in weights):
        raise WeightBelowOne("cumulative order-r bound requires all weights >= 1")
    points = [int(p) for p in points]
    space.check_index(xi)
    for p in points:
        space.check_index(p)
    col = _Collector()
    _eval_cumulative(col, space, xi, points, weights, float(r), space.ref())
    return col.report("r-order-cumulative", 1)


def weight_necessity_demo() -> ViolationWitness:
    """Concrete failure of the weighted median bound below unit weights.

    On the canonical four-point space, halving both weights leaves the
    mean set untouched (proportionality) while halving the right-hand
    side: member m then gives lhs 2 against rhs 1.  Returns the witness
    for the member with the largest left-hand side.
    """
    space = figure1_space()
    xi, x, y = space.index_of("ξ"), space.index_of("x"), space.index_of("y")
    alpha = beta = 0.5
    mean = binary_mean(space, 1.0, alpha, Subset([x]), beta, Subset([y]))
    rhs = alpha * space.distance(x, xi) + beta * space.distance(xi, y)
    worst = max(sorted(mean.minimizers), key=lambda m: space.distance(xi, m))
    return ViolationWitness(
        space.ref(), 1.0, (alpha, beta), ((x,), (y,)), xi,
        space.distance(xi, worst), rhs,
        detail="weighted-median", member=worst, theorem_regime=False,
    )


# ---------------------------------------------------------------------------
# Randomized search
# ---------------------------------------------------------------------------

def _search_trial(config: SearchConfig, trial: int) -> _Collector:
    col = _Collector(config.max_recorded)
    rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(trial,)))
    strategy = config.strategies[trial % len(config.strategies)]
    n = int(rng.integers(config.n_range[0], config.n_range[1] + 1))
    space_seed = int(rng.integers(0, 2**32))
    space = random_space(space_seed, n, strategy)
    ref = {"seed": space_seed, "n": n, "strategy": strategy}
    r = float(config.r_list[int(rng.integers(0, len(config.r_list)))])

    xi, x, y = (int(i) for i in rng.integers(0, n, size=3))
    alpha, beta = (float(v) for v in rng.uniform(*config.weight_range, size=2))
    k = int(rng.integers(config.combo_range[0], config.combo_range[1] + 1))
    pts = [int(p) for p in rng.integers(0, n, size=k)]
    ws = [float(v) for v in rng.uniform(*config.weight_range, size=k)]

    _eval_weighted_median(col, space, xi, x, y, 1.0, 1.0, ref, trial)
    _eval_weighted_median(col, space, xi, x, y, alpha, beta, ref, trial)
    _eval_cumulative(col, space, xi, pts, [1.0] * k, 1.0, ref, trial)
    _eval_cumulative(
        col, space, xi, pts, ws, 1.0, ref, trial, detail="countable-additivity-weighted"
    )
    _eval_r_order(col, space, xi, x, y, r, ref, trial)
    _eval_cumulative(col, space, xi, pts, ws, r, ref, trial, detail="r-order-cumulative")
    _eval_r_triangle(col, space, r, ref, trial)
    _eval_operator_laws(col, space, rng, r, config.weight_range, ref, trial)
    return col


def search_counterexamples(
    config: SearchConfig, threads: Optional[int] = None
) -> PropertyReport:
    """Randomized stress of every checker over random spaces.

    Per-trial generators are spawned from the master seed, so the outcome
    is independent of execution order and thread count; results merge in
    trial order.  Thread count comes from the argument or the
    FRECHET_LAB_THREADS environment variable (default serial).
    """
    if threads is None:
        threads = int(os.environ.get("FRECHET_LAB_THREADS", "1") or "1")
    threads = max(1, threads)
    total = _Collector(config.max_recorded)
    if threads == 1:
        for trial in range(config.trials):
            total.absorb(_search_trial(config, trial))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for col in pool.map(
                lambda t: _search_trial(config, t), range(config.trials)
            ):
                total.absorb(col)
    return total.report("counterexample-search", config.trials, config.seed)


def verify_space(
    space: FiniteMetricSpace, seed: int = 0, trials: int = 100
) -> list[PropertyReport]:
    """Theorem-regime sweep of every checker on one given space.

    Point triples are enumerated exhaustively when the space is small
    enough, otherwise sampled; weighted variants draw weights in [1, 5].
    """
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0xFEC,)))
    n = space.n
    ref = space.ref()
    reports = [check_operator_laws(space, SearchConfig(seed=seed, trials=8))]

    col = _Collector(25)
    triples = (
        [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]
        if n**3 <= 4096
        else [tuple(int(v) for v in rng.integers(0, n, 3)) for _ in range(trials)]
    )
    for xi, x, y in triples:
        _eval_weighted_median(col, space, xi, x, y, 1.0, 1.0, ref)
    reports.append(col.report("median-inequality", len(triples), seed))

    col = _Collector(25)
    for _ in range(trials):
        xi, x, y = (int(v) for v in rng.integers(0, n, 3))
        alpha, beta = (float(v) for v in rng.uniform(1.0, 5.0, 2))
        _eval_weighted_median(col, space, xi, x, y, alpha, beta, ref)
    reports.append(col.report("weighted-median-inequality", trials, seed))

    col = _Collector(25)
    for _ in range(trials):
        xi = int(rng.integers(0, n))
        k = int(rng.integers(2, 7))
        pts = [int(p) for p in rng.integers(0, n, size=k)]
        _eval_cumulative(col, space, xi, pts, [1.0] * k, 1.0, ref)
        ws = [float(v) for v in rng.uniform(1.0, 5.0, size=k)]
        _eval_cumulative(
            col, space, xi, pts, ws, 1.0, ref, detail="countable-additivity-weighted"
        )
    reports.append(col.report("countable-additivity", trials, seed))

    col = _Collector(25)
    for r in (1.0, 1.5, 2.0, 3.0):
        _eval_r_triangle(col, space, r, ref)
        for _ in range(max(1, trials // 4)):
            xi, x, y = (int(v) for v in rng.integers(0, n, 3))
            _eval_r_order(col, space, xi, x, y, r, ref)
            k = int(rng.integers(2, 7))
            pts = [int(p) for p in rng.integers(0, n, size=k)]
            ws = [float(v) for v in rng.uniform(1.0, 5.0, size=k)]
            _eval_cumulative(col, space, xi, pts, ws, r, ref, detail="r-order-cumulative")
    reports.append(col.report("r-order-inequality", trials, seed))
    return reports
