"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(ValueError):
    """A configuration or data object violates one of its invariants."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best available estimate and its error bound are kept on the
    instance so callers can decide whether to use them anyway.
    """

    def __init__(self, message, estimate=float("nan"), abserr=float("inf")):
        super().__init__(f"{message} (estimate={estimate!r}, abserr={abserr!r})")
        self.estimate = estimate
        self.abserr = abserr
