"""Finite metric spaces: validation, construction, generation and IO.

A space is a labeled point set with a dense pairwise distance matrix.
Every constructor in this module returns a matrix that satisfies the
four metric axioms (zero diagonal, symmetry, positive off-diagonal,
triangle inequality) within a relative tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DisconnectedGraph,
    DuplicateLabel,
    EmptySubset,
    IndexOutOfRange,
    InvalidMetric,
    NonSquareMatrix,
    NonpositiveWeight,
)

STRATEGIES = ("metric-repair", "random-graph", "euclidean-sample")

# Extra slack admitted when checking the triangle inequality, relative to
# the largest entry.  Exact metrics saturate triangles (shortest-path
# closures do so by construction) and float sums wobble by a few ulps.
TRI_TOL = 1e-9


def triangle_tolerance(matrix: np.ndarray) -> float:
    return TRI_TOL * (1.0 + float(np.max(matrix, initial=0.0)))


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple[int, ...]
    magnitude: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "indices": list(self.indices),
            "magnitude": self.magnitude,
        }


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Immutable labeled point set with a validated distance matrix."""

    labels: tuple[str, ...]
    dist: np.ndarray

    def __post_init__(self):
        self.dist.flags.writeable = False

    @property
    def n(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexOutOfRange(f"unknown label {label!r}") from None

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexOutOfRange(f"point index {i} outside 0..{self.n - 1}")

    def check_subset(self, subset: "Subset") -> None:
        if subset.max_index >= self.n:
            raise IndexOutOfRange(
                f"subset index {subset.max_index} outside 0..{self.n - 1}"
            )

    def distance(self, i: int, j: int) -> float:
        self.check_index(i)
        self.check_index(j)
        return float(self.dist[i, j])

    def all_points(self) -> "Subset":
        return Subset(range(self.n))

    def ref(self) -> dict:
        """Compact descriptor used inside witness records."""
        return {"labels": list(self.labels)}


@dataclass(frozen=True)
class Subset:
    """Nonempty set of point indices into a FiniteMetricSpace."""

    members: frozenset[int] = field()

    def __init__(self, members: Iterable[int]):
        ms = frozenset(int(m) for m in members)
        if not ms:
            raise EmptySubset("subset must contain at least one point")
        if min(ms) < 0:
            raise IndexOutOfRange("negative point index")
        object.__setattr__(self, "members", ms)

    @property
    def max_index(self) -> int:
        return max(self.members)

    @property
    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __iter__(self):
        return iter(self.sorted)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members


def validate_metric(
    matrix, labels: Sequence[str]
) -> Union[FiniteMetricSpace, ValidationReport]:
    """Check the metric axioms; return a space if they hold, else a report.

    Structural problems (non-square matrix, duplicated labels) raise, since
    no meaningful per-entry report exists for them.  Axiom violations are
    collected exhaustively: nonzero diagonal, asymmetry, nonpositive
    off-diagonal entries, and triangle violations beyond the relative
    tolerance.  Triangle and symmetry violations are reported once per
    unordered pair/triple.
    """
    m = np.asarray(matrix, dtype=float)
    labels = tuple(str(x) for x in labels)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquareMatrix(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] != len(labels):
        raise NonSquareMatrix(
            f"matrix size {m.shape[0]} does not match {len(labels)} labels"
        )
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("labels must be distinct")
    if not np.all(np.isfinite(m)):
        raise ValueError("distance matrix entries must be finite")

    n = m.shape[0]
    violations: list[Violation] = []

    for i in range(n):
        if m[i, i] != 0.0:
            violations.append(Violation("nonzero-diagonal", (i, i), float(m[i, i])))
    for i in range(n):
        for j in range(i + 1, n):
            gap = abs(m[i, j] - m[j, i])
            if gap > 0.0:
                violations.append(Violation("asymmetry", (i, j), float(gap)))
            if m[i, j] < 0.0 or m[j, i] < 0.0:
                violations.append(
                    Violation("negative-distance", (i, j), float(min(m[i, j], m[j, i])))
                )
            elif m[i, j] == 0.0 or m[j, i] == 0.0:
                violations.append(Violation("zero-off-diagonal", (i, j), 0.0))

    tol = triangle_tolerance(m)
    for j in range(n):
        # slack[i, k] > 0 means d(i,k) > d(i,j) + d(j,k)
        slack = m - (m[:, j : j + 1] + m[j : j + 1, :])
        for i, k in zip(*np.nonzero(slack > tol)):
            if i < k and j != i and j != k:
                violations.append(
                    Violation("triangle", (int(i), j, int(k)), float(slack[i, k]))
                )

    if violations:
        return ValidationReport(tuple(violations))
    return FiniteMetricSpace(labels, m)


def _make_space(labels: Sequence[str], matrix: np.ndarray) -> FiniteMetricSpace:
    """Validating constructor used by everything that builds spaces."""
    result = validate_metric(matrix, labels)
    if isinstance(result, ValidationReport):
        raise InvalidMetric(result)
    return result


def shortest_path_closure(matrix: np.ndarray) -> np.ndarray:
    """All-pairs shortest paths (Floyd-Warshall) of a nonnegative matrix."""
    d = np.array(matrix, dtype=float)
    n = d.shape[0]
    for k in range(n):
        np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :], out=d)
    return d


def from_edge_list(
    edges: Iterable[tuple[str, str, float]]
) -> FiniteMetricSpace:
    """Shortest-path metric of an undirected weighted graph.

    Labels appear in first-mention order.  Parallel edges keep the lighter
    weight.  The closure guarantees the triangle inequality; connectivity
    is required so every distance is finite.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    parsed: list[tuple[int, int, float]] = []
    for a, b, w in edges:
        a, b = str(a), str(b)
        w = float(w)
        if w <= 0.0:
            raise NonpositiveWeight(f"edge ({a}, {b}) has weight {w}")
        if a == b:
            raise ValueError(f"self edge on {a!r} not allowed")
        for name in (a, b):
            if name not in index:
                index[name] = len(labels)
                labels.append(name)
        parsed.append((index[a], index[b], w))
    if not labels:
        raise ValueError("edge list is empty")

    n = len(labels)
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for i, j, w in parsed:
        if w < d[i, j]:
            d[i, j] = w
            d[j, i] = w
    d = shortest_path_closure(d)
    if not np.all(np.isfinite(d)):
        raise DisconnectedGraph("graph is not connected")
    return _make_space(labels, d)


def point_subset_distance(space: FiniteMetricSpace, y: int, subset: Subset) -> float:
    """Distance from point y to a finite subset: the minimum over members.

    Kept as a plain Python scan so it stays an independent code path from
    the vectorized solver internals.
    """
    space.check_index(y)
    space.check_subset(subset)
    return min(float(space.dist[y, a]) for a in subset)


def figure1_space() -> FiniteMetricSpace:
    """Canonical negatively curved four-point space.

    Points ξ, x, y, m with d(ξ,x) = d(ξ,y) = d(x,m) = d(y,m) = 1 and
    d(ξ,m) = d(x,y) = 2.  All triangles through the long pairs are
    saturated, which makes the space the standard witness that the
    Euclidean half-factor median law fails in general metric spaces.
    """
    labels = ("ξ", "x", "y", "m")
    d = np.array(
        [
            [0.0, 1.0, 1.0, 2.0],
            [1.0, 0.0, 2.0, 1.0],
            [1.0, 2.0, 0.0, 1.0],
            [2.0, 1.0, 1.0, 0.0],
        ]
    )
    return _make_space(labels, d)


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(n))


def _strategy_rng(seed: int, n: int, strategy: str) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    code = STRATEGIES.index(strategy)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(code, n)))


def random_space(seed: int, n: int, strategy: str = "metric-repair") -> FiniteMetricSpace:
    """Deterministic random metric space; always passes validation.

    metric-repair: symmetric uniform(0.1, 2.0) matrix repaired into a
    metric by shortest-path closure.  random-graph: connected random
    graph with uniform(0.1, 2.0) weights, shortest-path metric.
    euclidean-sample: n points uniform in [0,1]^3 with Euclidean
    distances.  Identical (seed, n, strategy) gives identical matrices.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    rng = _strategy_rng(seed, n, strategy)
    labels = _default_labels(n)
    if n == 1:
        return _make_space(labels, np.zeros((1, 1)))

    if strategy == "metric-repair":
        upper = np.triu(rng.uniform(0.1, 2.0, size=(n, n)), k=1)
        d = shortest_path_closure(upper + upper.T)
    elif strategy == "random-graph":
        d = np.full((n, n), np.inf)
        np.fill_diagonal(d, 0.0)
        # random recursive tree keeps the graph connected
        for i in range(1, n):
            j = int(rng.integers(0, i))
            w = rng.uniform(0.1, 2.0)
            d[i, j] = d[j, i] = w
        for i in range(n):
            for j in range(i + 1, n):
                if np.isinf(d[i, j]) and rng.random() < 0.3:
                    d[i, j] = d[j, i] = rng.uniform(0.1, 2.0)
        d = shortest_path_closure(d)
    else:  # euclidean-sample
        while True:
            pts = rng.uniform(0.0, 1.0, size=(n, 3))
            diff = pts[:, None, :] - pts[None, :, :]
            d = np.sqrt((diff * diff).sum(axis=2))
            off = d[~np.eye(n, dtype=bool)]
            if off.min() > 0.0:  # coincident samples: redraw
                break
    return _make_space(labels, d)


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def parse_distance_csv(text: str) -> tuple[tuple[str, ...], np.ndarray]:
    """Parse the distance-matrix CSV format: label row, then n value rows."""
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise ValueError("empty distance CSV")
    labels = tuple(cell.strip() for cell in lines[0].split(","))
    rows = []
    for ln in lines[1:]:
        rows.append([float(cell) for cell in ln.split(",")])
    if len(rows) != len(labels):
        raise NonSquareMatrix(
            f"expected {len(labels)} data rows, found {len(rows)}"
        )
    return labels, np.array(rows, dtype=float)


def format_distance_csv(space: FiniteMetricSpace) -> str:
    lines = [",".join(space.labels)]
    for row in space.dist:
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> list[tuple[str, str, float]]:
    """Parse the edge-list format: `a b weight` per line, # comments."""
    edges = []
    for raw in text.split("\n"):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge line: {raw!r}")
        edges.append((parts[0], parts[1], float(parts[2])))
    return edges


def load_space(path: str) -> FiniteMetricSpace:
    """Load a space from a distance CSV or an edge list, sniffing the format.

    A first non-blank line containing a comma is treated as a CSV header;
    anything else as an edge list.  Raises InvalidMetric if a CSV matrix
    fails validation.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    first = next((ln for ln in text.split("\n") if ln.strip()), "")
    if "," in first:
        labels, matrix = parse_distance_csv(text)
        return _make_space(labels, matrix)
    return from_edge_list(parse_edge_list(text))
