"""Exception types shared across the package."""


class DimensionError(ValueError):
    """A matrix, vector or local dimension has an unusable shape."""


class DomainError(ValueError):
    """A scalar parameter lies outside its admissible range."""


class ConsistencyError(ArithmeticError):
    """A numerically-real quantity came out with a significant imaginary part."""


class InvalidStateError(ValueError):
    """Input fails density-matrix or pure-state validation.

    ``check`` names the failed test (``"shape"``, ``"finite"``, ``"trace"``,
    ``"hermiticity"``, ``"psd"`` or ``"norm"``).
    """

    def __init__(self, check, message):
        super().__init__(f"{check}: {message}")
        self.check = check


class NonMonotoneError(RuntimeError):
    """Bisection bracketing found a statistic that decreases along the family."""
