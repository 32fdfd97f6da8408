"""Exception types shared across the package."""


class HorowaveError(Exception):
    """Base class for all package-specific errors."""


class QuadratureUnderResolved(HorowaveError):
    """A quadrature failed its resolution (doubling / step-halving) check."""


class SpectralSingularity(HorowaveError):
    """Evaluation requested at a singular spectral parameter (lambda = 0)."""


class SupportOverflow(HorowaveError):
    """Sampled field carries too much mass near the grid boundary."""


class SpectralTruncation(HorowaveError):
    """Spectral field has not decayed at the lambda-grid boundary."""


class NotRadial(HorowaveError):
    """Operation requires a K-invariant (radial) field."""


class ConfigError(HorowaveError):
    """Invalid CLI / run configuration."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"bad config value for '{key}': {message}")
