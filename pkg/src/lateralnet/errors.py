class LateralNetError(Exception):
    """Base class for errors raised by this package."""


class ParseError(LateralNetError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ParseError):
    """Input parsed but violates a structural requirement (e.g. simplicity)."""


class UndefinedStatistic(LateralNetError, ValueError):
    """A statistic has no value on this input; ``reason`` is a short code."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class ConfigError(LateralNetError, ValueError):
    pass


class FitError(LateralNetError, ValueError):
    pass


class ResourceLimitError(LateralNetError, RuntimeError):
    """An enumeration exceeded its configured bound."""

    def __init__(self, message, bound):
        self.bound = bound
        super().__init__(f"{message} (bound {bound})")
