"""Exception types shared across the package."""


class PolyhedralError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PolyhedralError, ValueError):
    """Malformed input: dimension mismatch, bad rational literal, bad row."""


class PreconditionError(PolyhedralError, ValueError):
    """A documented precondition of an operation was violated."""


class CapacityError(PolyhedralError, ValueError):
    """Instance exceeds the supported size caps for exact conversion."""


class InternalError(PolyhedralError, RuntimeError):
    """A self-check failed; indicates a bug, never bad user input."""


class FormatError(InputError):
    """Instance document could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
