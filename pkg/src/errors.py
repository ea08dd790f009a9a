"""
Exception hierarchy for bandrec
"""
from typing import Optional


class BandrecError(Exception):
    """Base class for every error raised by this package"""


class ConfigError(BandrecError, ValueError):
    """Config file missing, unreadable or invalid"""


class GeometryError(BandrecError, ValueError):
    """Invalid body, dimension mismatch or inadmissible band radius"""


class NodeError(BandrecError, ValueError):
    """Invalid node generator parameters or degenerate node set"""


class NumericalError(BandrecError, ArithmeticError):
    """A quadrature or linear solve did not meet its tolerance"""


class QuadratureError(NumericalError):
    def __init__(self, message: str, estimate: Optional[float] = None):
        super().__init__(message)
        self.estimate = estimate


class FactorizationError(NumericalError):
    """Cholesky factorization failed even after the jitter retry"""


class ResidualError(NumericalError):
    def __init__(self, message: str, residual: float, condition_estimate: float):
        super().__init__(message)
        self.residual = residual
        self.condition_estimate = condition_estimate


class AveragedSolveError(NumericalError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class ReportParseError(BandrecError, ValueError):
    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        super().__init__(message)
        self.row = row
        self.column = column
