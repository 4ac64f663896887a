"""Exception types shared across the package."""


class EnsLdpcError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(EnsLdpcError, ValueError):
    pass


class InsufficientRank(EnsLdpcError, ValueError):
    pass


class PoolTooSmall(EnsLdpcError, ValueError):
    pass


class ParseError(EnsLdpcError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InconsistentDegrees(ParseError):
    def __init__(self, message, line=None):
        super().__init__(message, line)


class ShiftOutOfRange(EnsLdpcError, ValueError):
    pass


class IndexOutOfRange(EnsLdpcError, ValueError):
    pass


class ConstructionFailure(EnsLdpcError, RuntimeError):
    pass


class InvalidRate(EnsLdpcError, ValueError):
    pass


class InvalidSigma(EnsLdpcError, ValueError):
    pass


class InvalidShift(EnsLdpcError, ValueError):
    pass


class EvenLength(EnsLdpcError, ValueError):
    pass


class InvalidSchedule(EnsLdpcError, ValueError):
    pass


class NotAnAutomorphism(EnsLdpcError, ValueError):
    pass


class NotPowerOfTwo(EnsLdpcError, ValueError):
    pass


class EmptyList(EnsLdpcError, ValueError):
    pass


class DimensionTooLarge(EnsLdpcError, ValueError):
    pass


class ConfigError(EnsLdpcError, ValueError):
    pass
