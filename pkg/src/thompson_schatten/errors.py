"""Exception hierarchy shared by every module of the package."""


class ThompsonSchattenError(Exception):
    """Base class for all errors raised by this package."""


class AsymmetricMatrix(ThompsonSchattenError, ValueError):
    pass


class DimensionMismatch(ThompsonSchattenError, ValueError):
    pass


class NotPositiveDefinite(ThompsonSchattenError, ValueError):
    """Raised when a matrix lies outside the interior of the PSD cone.

    ``margin`` carries the failing pivot or smallest eigenvalue when known.
    """

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin


class NotPSD(NotPositiveDefinite):
    pass


class InvalidOrder(ThompsonSchattenError, ValueError):
    pass


class ZeroMatrix(ThompsonSchattenError, ValueError):
    pass


class NonPositiveSpectrum(ThompsonSchattenError, ValueError):
    pass


class ConvergenceError(ThompsonSchattenError, ArithmeticError):
    pass


class MaxIterationsExceeded(ConvergenceError):
    def __init__(self, message, solution=None, iterations=None):
        super().__init__(message)
        self.solution = solution
        self.iterations = iterations


class ContractionNotObserved(ConvergenceError):
    """The iteration converged (or stalled) without a contraction ratio below 1.

    The last iterate is still available as ``solution``; only the
    certificate is refused.
    """

    def __init__(self, message, solution=None, rho_hat=None, iterations=None):
        super().__init__(message)
        self.solution = solution
        self.rho_hat = rho_hat
        self.iterations = iterations


class ParseError(ThompsonSchattenError, ValueError):
    pass


class ConfigError(ThompsonSchattenError, ValueError):
    pass
