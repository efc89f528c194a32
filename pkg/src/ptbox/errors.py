"""Exception types shared across the package."""


class PTBoxError(Exception):
    """Base class for all package errors."""


class DomainError(PTBoxError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BranchError(DomainError):
    """A point lies on the principal branch cut of a multivalued factor."""


class ConvergenceError(PTBoxError, RuntimeError):
    """An iterative method failed to converge.

    ``bracket`` holds the offending interval (or last two estimates) when known.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class NonConvergence(ConvergenceError):
    """Quadrature refinement did not settle; ``bracket`` holds the last two estimates."""


class ToleranceFailure(ConvergenceError):
    """Step-size control could not meet the requested tolerance."""


class WallCollapse(PTBoxError, RuntimeError):
    """The box length reached (numerically) zero at time ``t_star``."""

    def __init__(self, t_star):
        super().__init__(f"wall collapsed at t* = {t_star:.17g}")
        self.t_star = t_star


class WindowError(DomainError):
    """A time query lies outside the window covered by a schedule."""


class InstabilityError(PTBoxError, RuntimeError):
    """Norm growth in a Hermitian evolution exceeded the stability threshold."""
