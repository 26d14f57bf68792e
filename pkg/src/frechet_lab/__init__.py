"""Weighted Fréchet means, cumulative means and oplus-convex hulls on
finite metric spaces, with machine verification of the operator laws and
generalized median inequalities, plus an exact/iterative Euclidean backend."""

from .errors import (
    AllWeightsZero,
    DisconnectedGraph,
    DuplicateLabel,
    EmptySubset,
    FrechetLabError,
    IndexOutOfRange,
    InvalidMetric,
    NonSquareMatrix,
    NonpositiveWeight,
    OrderBelowOne,
    WeightBelowOne,
    WeightSumZero,
)
from .euclidean import (
    EuclideanProblem,
    EuclideanSolution,
    SolverConfig,
    general_r_descent,
    geometric_median_weiszfeld,
    grid_oracle,
    weighted_mean_r2,
)
from .hull import ConvexityReport, HullResult, check_convexity, hull_grid_oracle, hull_members
from .laws import (
    PropertyReport,
    SearchConfig,
    ViolationWitness,
    check_countable_additivity,
    check_median_inequality,
    check_operator_laws,
    check_r_order,
    check_r_order_cumulative,
    check_weighted_median,
    search_counterexamples,
    verify_space,
    weight_necessity_demo,
)
from .metric import (
    FiniteMetricSpace,
    Subset,
    ValidationReport,
    figure1_space,
    from_edge_list,
    load_space,
    point_subset_distance,
    random_space,
    validate_metric,
)
from .solver import (
    FrechetMeanSet,
    FrechetProblem,
    WeightedArgument,
    binary_mean,
    mean_set,
    objective,
    representative,
)

__version__ = "0.1.0"
