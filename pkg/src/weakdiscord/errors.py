"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter or state lies outside the physically valid domain."""


class DimensionError(ValueError):
    """Operand shapes are incompatible or unsupported."""


class ConvergenceError(RuntimeError):
    """The basis optimizer did not settle within its refinement budget.

    The best point found so far is kept on the exception so callers can
    still inspect or use it.
    """

    def __init__(self, message, best_basis=None, best_value=None):
        super().__init__(message)
        self.best_basis = best_basis
        self.best_value = best_value
