"""Exception hierarchy shared by every warpcurv module."""


class WarpcurvError(Exception):
    """Base class for all library errors."""


class DomainError(WarpcurvError, ValueError):
    """A function was evaluated outside its domain."""

    def __init__(self, fn, value, message=None):
        self.fn = fn
        self.value = value
        super().__init__(message or f"{fn}: argument {value!r} outside domain")


class ParameterError(WarpcurvError, ValueError):
    """A model parameter (alpha, n, d, ...) is outside the admissible range."""


class DegenerateError(WarpcurvError):
    """The requested computation hits a degenerate case that is flagged, not integrated."""


class NumericsError(WarpcurvError, ArithmeticError):
    """A numerical routine (quadrature, root finding) failed to converge."""


class InputError(WarpcurvError, ValueError):
    """Malformed user input, e.g. a non-orthonormal 2-plane."""
