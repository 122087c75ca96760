"""Exception types shared across the package."""


class OTError(Exception):
    """Base class for errors raised by otlck."""


class FieldValidationError(OTError, ValueError):
    """A defining polynomial was rejected; ``reason`` is a stable label."""

    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


class FieldMismatchError(OTError, ValueError):
    pass


class ReducibleFieldError(OTError, ArithmeticError):
    """An inverse computation hit a nontrivial factor of the defining polynomial."""


class PrecisionExhausted(OTError, ArithmeticError):
    """Certification failed below the precision cap."""


class NotAUnitError(OTError, ValueError):
    pass


class DimensionMismatchError(OTError, ValueError):
    pass


class FullRankSublatticeError(OTError, ValueError):
    pass


class HypothesisError(OTError, ValueError):
    """Signature does not satisfy s >= 1, t >= 2, s >= 2t."""
