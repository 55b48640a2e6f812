"""Exception types shared across the package."""


class ConeRayError(Exception):
    """Base class for all package errors."""


class ConfigurationError(ConeRayError):
    """A problem description is invalid (bad counts, bad coefficients,
    malformed config document, failed validation clause)."""


class ExprSyntaxError(ConeRayError):
    """Expression text could not be parsed."""

    def __init__(self, message: str, position: int, expected: str = ""):
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {position}{hint}")
        self.position = position
        self.expected = expected


class ExprEvalError(ConeRayError):
    """Expression evaluation hit an unbound variable or a domain error.

    ``index`` locates the offending element when evaluation ran over an
    array of points (mesh node or sample index)."""

    def __init__(self, message: str, index: int | None = None):
        if index is not None:
            message = f"{message} [element {index}]"
        super().__init__(message)
        self.index = index


class SingularOperatorError(ConeRayError):
    """The discrete operator could not be factorized or solved reliably."""


class SolverFailure(ConeRayError):
    """Base class for diagnosed eigensolver failures."""

    status = "failed"

    def __init__(self, message: str, iterations: int = 0,
                 residual: float = float("nan"), lam: float = float("nan")):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual
        self.lam = lam


class NormCollapseError(SolverFailure):
    """The image of an iterate collapsed below the norm floor: the map has
    no usable positive lower bound on the cone sphere, so no positive
    eigenray can be certified from this start."""

    status = "norm_collapse"


class NonConvergenceError(SolverFailure):
    """Iteration budget exhausted, or the terminal residual missed its
    tolerance.  A solver outcome, not a statement about the problem."""

    status = "no_convergence"
