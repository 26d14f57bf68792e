"""Fréchet means of weighted point clouds in R^d.

Three solvers cover the convex objective F(y) = sum_i w_i ||y - p_i||^r:
the exact weighted average for r = 2, Weiszfeld iteration with anchor
handling for r = 1, and gradient descent with backtracking line search
for general r > 1.  A brute-force grid scan acts as the independent
test oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import OrderBelowOne, WeightSumZero


@dataclass(frozen=True)
class EuclideanProblem:
    points: np.ndarray  # (n, d)
    weights: np.ndarray  # (n,)
    order: float

    def __init__(self, points, weights, order: float):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        w = np.asarray(weights, dtype=float)
        if pts.ndim != 2:
            raise ValueError("points must form an (n, d) array")
        if w.shape != (pts.shape[0],):
            raise ValueError("need exactly one weight per point")
        if np.any(w < 0.0):
            raise ValueError("weights must be nonnegative")
        if w.sum() <= 0.0:
            raise WeightSumZero("weights must not sum to zero")
        order = float(order)
        if order < 1.0:
            raise OrderBelowOne(f"order must be >= 1, got {order}")
        pts.flags.writeable = False
        w.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "order", order)

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-10
    max_iter: int = 10_000
    anchor_eps: float = 1e-12

    def __post_init__(self):
        if self.tol <= 0.0 or self.anchor_eps <= 0.0 or self.max_iter < 1:
            raise ValueError("tol > 0, anchor_eps > 0 and max_iter >= 1 required")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class EuclideanSolution:
    minimizer: np.ndarray
    objective: float
    iterations: int
    converged: bool


def objective_value(problem: EuclideanProblem, y) -> float:
    y = np.asarray(y, dtype=float)
    dists = np.linalg.norm(problem.points - y, axis=1)
    return float(np.sum(problem.weights * dists**problem.order))


def gradient(problem: EuclideanProblem, y) -> np.ndarray:
    """Analytic gradient of F; anchor contributions vanish for r > 1."""
    y = np.asarray(y, dtype=float)
    diff = y - problem.points
    dists = np.linalg.norm(diff, axis=1)
    r = problem.order
    out = np.zeros_like(y)
    mask = dists > 0.0
    if np.any(mask):
        coef = problem.weights[mask] * r * dists[mask] ** (r - 2.0)
        out = coef @ diff[mask]
    return out


def _centroid(problem: EuclideanProblem) -> np.ndarray:
    return problem.weights @ problem.points / problem.weights.sum()


def _solution(problem, y, iterations, converged) -> EuclideanSolution:
    y = np.array(y, dtype=float)
    y.flags.writeable = False
    return EuclideanSolution(y, objective_value(problem, y), iterations, converged)


def weighted_mean_r2(problem: EuclideanProblem) -> EuclideanSolution:
    """Exact minimizer for order 2: the weighted average of the points."""
    if problem.order != 2.0:
        raise ValueError("weighted_mean_r2 requires order == 2")
    return _solution(problem, _centroid(problem), 0, True)


def geometric_median_weiszfeld(
    problem: EuclideanProblem, config: SolverConfig = DEFAULT_CONFIG
) -> EuclideanSolution:
    """Weighted geometric median by Weiszfeld iteration.

    Starts at the weighted centroid.  The vanilla update is undefined at
    anchor points, so when the iterate falls within anchor_eps of anchors
    we test the subgradient optimality condition (pull of the remaining
    points no stronger than the local weight); if it fails, we take the
    damped step that moves off the anchor.  The converged flag reports
    whether the movement tolerance was reached before max_iter.
    """
    if problem.order != 1.0:
        raise ValueError("geometric_median_weiszfeld requires order == 1")
    pts, w = problem.points, problem.weights
    y = _centroid(problem)
    for it in range(1, config.max_iter + 1):
        dists = np.linalg.norm(pts - y, axis=1)
        at = dists <= config.anchor_eps
        if np.any(at):
            w_local = w[at].sum()
            away = ~at
            if not np.any(away):
                return _solution(problem, pts[at][0], it, True)
            pull = (w[away] / dists[away]) @ (pts[away] - y)
            pull_norm = float(np.linalg.norm(pull))
            if pull_norm <= w_local:
                return _solution(problem, pts[at][0], it, True)
            inv = w[away] / dists[away]
            t_step = inv @ pts[away] / inv.sum()
            eta = min(1.0, w_local / pull_norm)
            y_next = (1.0 - eta) * t_step + eta * y
        else:
            inv = w / dists
            y_next = inv @ pts / inv.sum()
        move = float(np.linalg.norm(y_next - y))
        y = y_next
        if move < config.tol:
            return _solution(problem, y, it, True)
    return _solution(problem, y, config.max_iter, False)


def general_r_descent(
    problem: EuclideanProblem, config: SolverConfig = DEFAULT_CONFIG
) -> EuclideanSolution:
    """Gradient descent with backtracking line search on the convex objective.

    Delegates to Weiszfeld for r = 1.  Terminates when the gradient norm
    drops to config.tol.  For 1 < r < 2 the gradient is continuous but
    not Lipschitz at anchors, so iterates landing within anchor_eps of an
    anchor are nudged off it before evaluating.
    """
    if problem.order == 1.0:
        return geometric_median_weiszfeld(problem, config)
    pts, w, r = problem.points, problem.weights, problem.order

    def nudge(y: np.ndarray) -> np.ndarray:
        if r >= 2.0:
            return y
        d = np.linalg.norm(pts - y, axis=1)
        hit = d <= config.anchor_eps
        if np.any(hit):
            y = y + config.anchor_eps * np.ones_like(y)
        return y

    y = nudge(_centroid(problem))
    fy = objective_value(problem, y)
    g = gradient(problem, y)
    gnorm = float(np.linalg.norm(g))
    step = 1.0 / (r * w.sum() + 1.0)
    recent = [fy] * 5  # nonmonotone reference window
    prev_move = prev_gdiff = None
    for it in range(1, config.max_iter + 1):
        if gnorm <= config.tol:
            return _solution(problem, y, it - 1, True)
        # Barzilai-Borwein spectral trial step, safeguarded by backtracking
        if prev_move is not None:
            curv = float(prev_move @ prev_gdiff)
            step = float(prev_move @ prev_move) / curv if curv > 0.0 else step * 2.0
        else:
            step *= 2.0
        step = min(max(step, 1e-18), 1e12)
        f_ref = max(recent)
        # Near the optimum the Armijo decrease underflows below the float
        # resolution of F; such steps are accepted whenever the
        # (cancellation-free) analytic gradient norm contracts instead.
        f_noise = 1e-12 * (1.0 + abs(f_ref))
        while True:
            cand = nudge(y - step * g)
            fc = objective_value(problem, cand)
            gc = gradient(problem, cand)
            gcnorm = float(np.linalg.norm(gc))
            if fc <= f_ref - 1e-4 * step * gnorm**2:
                break
            if fc <= f_ref + f_noise and gcnorm < gnorm:
                break
            step *= 0.5
            if step < 1e-20:  # stalled at float resolution
                return _solution(problem, y, it, gnorm <= config.tol)
        prev_move, prev_gdiff = cand - y, gc - g
        y, fy, g, gnorm = cand, fc, gc, gcnorm
        recent = recent[1:] + [fy]
    return _solution(problem, y, config.max_iter, gnorm <= config.tol)


def solve(
    problem: EuclideanProblem, config: SolverConfig = DEFAULT_CONFIG
) -> EuclideanSolution:
    """Route to the solver matching the problem order."""
    if problem.order == 1.0:
        return geometric_median_weiszfeld(problem, config)
    if problem.order == 2.0:
        return weighted_mean_r2(problem)
    return general_r_descent(problem, config)


def grid_oracle(
    problem: EuclideanProblem,
    box: tuple,
    resolution: int,
    chunk: int = 1_000_000,
) -> EuclideanSolution:
    """Brute-force scan of the objective on a regular grid over ``box``.

    box = (lo, hi) with per-axis vectors.  Returns the best grid node
    (first in row-major order on ties).  Independent oracle: shares no
    code with the iterative solvers.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2 per axis")
    lo = np.atleast_1d(np.asarray(box[0], dtype=float))
    hi = np.atleast_1d(np.asarray(box[1], dtype=float))
    axes = [np.linspace(lo[k], hi[k], resolution) for k in range(problem.dim)]
    mesh = np.meshgrid(*axes, indexing="ij")
    grid = np.stack([m.ravel() for m in mesh], axis=1)

    best_val = np.inf
    best_point: Optional[np.ndarray] = None
    for start in range(0, grid.shape[0], chunk):
        block = grid[start : start + chunk]
        total = np.zeros(block.shape[0])
        for p, wi in zip(problem.points, problem.weights):
            d = np.linalg.norm(block - p, axis=1)
            total += wi * d**problem.order
        i = int(np.argmin(total))
        if total[i] < best_val:
            best_val = float(total[i])
            best_point = block[i].copy()
    return _solution(problem, best_point, 0, True)
