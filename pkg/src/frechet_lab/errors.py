"""Exception types shared across the library."""


class FrechetLabError(Exception):
    """Base class for all library errors."""


class NonSquareMatrix(FrechetLabError, ValueError):
    pass


class DuplicateLabel(FrechetLabError, ValueError):
    pass


class InvalidMetric(FrechetLabError, ValueError):
    """Raised by strict constructors when a matrix fails the metric axioms.

    Carries the full validation report in ``report``.
    """

    def __init__(self, report):
        self.report = report
        kinds = sorted({v.kind for v in report.violations})
        super().__init__(f"matrix is not a metric: {', '.join(kinds)}")


class DisconnectedGraph(FrechetLabError, ValueError):
    pass


class NonpositiveWeight(FrechetLabError, ValueError):
    pass


class IndexOutOfRange(FrechetLabError, IndexError):
    pass


class EmptySubset(FrechetLabError, ValueError):
    pass


class AllWeightsZero(FrechetLabError, ValueError):
    pass


class OrderBelowOne(FrechetLabError, ValueError):
    pass


class WeightBelowOne(FrechetLabError, ValueError):
    pass


class WeightSumZero(FrechetLabError, ValueError):
    pass
