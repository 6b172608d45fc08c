"""Exception types raised across the package."""


class LinenetError(Exception):
    """Base class for all package errors."""


class CollinearOverlap(LinenetError):
    """Two segments overlap along a common line; callers must pre-split."""


class NegativeRadius(LinenetError, ValueError):
    pass


class NegativeLength(LinenetError, ValueError):
    pass


class NonPositiveRadius(LinenetError, ValueError):
    pass


class DegenerateSegment(LinenetError, ValueError):
    pass


class PointsOutsideWindow(LinenetError, ValueError):
    pass


class DegenerateCell(LinenetError, ValueError):
    pass


class NonConvergentWidening(LinenetError, RuntimeError):
    pass


class ToleranceNotMet(LinenetError, RuntimeError):
    pass


class DuplicatePoints(LinenetError, ValueError):
    pass


class NonIntegralRatio(LinenetError, ValueError):
    pass


class Disconnected(LinenetError, RuntimeError):
    pass


class CoincidentPoints(LinenetError, ValueError):
    pass


class SizeMismatch(LinenetError, ValueError):
    pass


class NodeMismatch(LinenetError, ValueError):
    pass


class ExhaustedAttempts(LinenetError, RuntimeError):
    """No attempt met both thresholds. Carries the search result with its log."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
