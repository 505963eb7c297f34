"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConfigError(ValueError):
    """A run configuration file or override is invalid."""


class SubdivisionLimitError(RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget before reaching
    the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NoSignChangeError(ValueError):
    """Bisection bracket endpoints do not straddle a sign change."""


class InsufficientSamplesError(ValueError):
    """Too few regulator samples for the requested extrapolation order."""


class OscillationBudgetError(RuntimeError):
    """The dimensionless oscillation parameter alpha * width**2 exceeds the
    budget the quadrature kernels are rated for."""


class GridTooSmallError(ValueError):
    """A radial grid does not cover the support of the requested packet."""


class TooCloseToFrontError(ValueError):
    """A field point sits inside the exclusion zone around the wave front."""


class OnLightConeError(ArithmeticError):
    """The retarded kernel is divergent exactly on the light cone; the value
    is reported as this error rather than a number."""


class ShortTimeWindowWarning(UserWarning):
    """The short-time phase approximation was evaluated outside its stated
    validity window."""
