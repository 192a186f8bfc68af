"""Exception hierarchy shared by the library and the CLI."""


class MLError(Exception):
    """Base class for every error raised by mlopc."""


class PoleError(MLError, ValueError):
    """Gamma function evaluated at a non-positive integer."""


class DomainError(MLError, ValueError):
    """Argument outside the domain of a scalar kernel."""


class InvalidParameterError(MLError, ValueError):
    """alpha <= 0, gamma <= 0 or an out-of-range tolerance."""


class UnsupportedParametersError(MLError):
    """Three-parameter case outside 0 < alpha < 1, |Arg lambda| > alpha*pi."""


class NoAdmissibleRegionError(MLError):
    """Every region of the singularity chart was rejected by the planner."""

    def __init__(self, message, reasons=()):
        super().__init__(message)
        self.reasons = list(reasons)


class IterationDivergenceError(MLError):
    """The fbar fixed-point iteration in the unbounded region did not settle."""


class OracleNonConvergenceError(MLError):
    """Series summation hit max_terms before the stopping rule fired."""
