class LRSTError(Exception):
    """Base class of every error raised by lrstensor."""


class ModeError(LRSTError, ValueError):
    pass


class ShapeMismatchError(LRSTError, ValueError):
    pass


class RankError(LRSTError, ValueError):
    pass


class ZeroTensorError(LRSTError, ValueError):
    pass


class RankDeficientError(LRSTError, ArithmeticError):
    """A matricization lost rank at the declared Tucker rank."""


class NonFiniteError(LRSTError, ArithmeticError):
    pass


class ConfigError(LRSTError, ValueError):
    pass


class InfeasibleSpectrumError(ConfigError):
    pass


class FormatError(LRSTError, ValueError):
    """Malformed LRST binary or sparse CSV content."""


class LRSTWarning(UserWarning):
    """Recoverable numerical diagnostics (degenerate thresholds, clamping...)."""


class NotOrthonormalError(LRSTError, ValueError):
    pass


class ObservationError(LRSTError, ValueError):
    """Observations outside the model's support (non-binary, negative counts)."""


class OutputExistsError(LRSTError, FileExistsError):
    """Output directory is not empty and overwriting was not requested."""
