"""Exception hierarchy shared by the state constructors and checks."""


class FockError(Exception):
    """Base class for all library errors."""


class ParameterError(FockError, ValueError):
    """A state or operator parameter is outside its admissible range."""


class DimensionError(FockError, ValueError):
    pass


class DomainError(FockError, ValueError):
    pass


class NormalizationError(FockError, ValueError):
    pass


class NoStateError(FockError, ValueError):
    """The nonlinear function vanishes everywhere, so no eigenstate exists."""


class ExponentialFormUnavailable(FockError, ValueError):
    """f has a zero in range, so alpha / f(N - 1) does not exist."""


class ConsistencyError(FockError, RuntimeError):
    pass


class NumericalError(FockError, ArithmeticError):
    """Base for failures caused by truncation or floating point limits."""


class TruncationError(NumericalError):
    pass


class DivergenceError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    def __init__(self, message, *, terms=None, last_term_norm=None, partial_norm=None):
        super().__init__(message)
        self.terms = terms
        self.last_term_norm = last_term_norm
        self.partial_norm = partial_norm
