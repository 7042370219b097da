"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Structural parameters are invalid (qubit count, block size, layer count...)."""


class UsageError(ValueError):
    """A call was made with inconsistent arguments (shape mismatch, missing angle...)."""


class EncodeError(ValueError):
    """Records, grid and circuit configuration disagree at serialization time."""


class FormatError(ValueError):
    """A compressed byte stream is malformed. Carries the offending byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class DegenerateGradient(ArithmeticError):
    """Gradient norm too small to form the closed-form parameter correction."""
