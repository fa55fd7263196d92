"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """An argument lies outside the mathematical or physical domain."""


class DivergenceError(DomainError):
    """The requested quantity diverges (e.g. <r^-3> for an s-state)."""


class SingularityError(DomainError):
    """Evaluation requested at a coordinate singularity (r = 0 or sin(theta) = 0)."""


class EvaluationError(ArithmeticError):
    """An integrand produced a non-finite value."""


class ConvergenceError(ArithmeticError):
    """Quadrature did not converge under refinement.

    Attributes
    ----------
    value : float
        Best available estimate.
    error : float
        Error estimate from the last refinement step.
    """

    def __init__(self, message, value=float("nan"), error=float("nan")):
        super().__init__(message)
        self.value = value
        self.error = error
