"""Exception hierarchy shared by all modules."""


class WaveguideError(Exception):
    """Base class for every error raised by :mod:`dnwaveguide`."""


class DomainError(WaveguideError, ValueError):
    """A parameter lies outside the range where a construction is defined."""


class PoleError(WaveguideError, ArithmeticError):
    """A tangent is evaluated too close to one of its poles."""


class NoRootError(WaveguideError):
    """No admissible sign change was found on the search interval.

    ``value`` carries the smallest root found elsewhere, if any (e.g. a
    non-positive ground state when only positive roots are admissible).
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class ConvergenceError(WaveguideError):
    """An iterative solver hit its iteration cap or residual target."""


class InconclusiveError(WaveguideError):
    """Error bars straddle the decision threshold."""
