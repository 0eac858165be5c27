class InputError(ValueError):
    """Raised for malformed input: bad graph files, layouts, expressions or parameters."""

    def __init__(self, message: str, line: int = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapacityError(RuntimeError):
    """Raised when an instance exceeds a configured solver or enumeration limit."""


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3


def exit_code(exc: BaseException) -> int:
    """CLI exit status for an exception escaping a command."""
    if isinstance(exc, InputError):
        return EXIT_INPUT
    if isinstance(exc, CapacityError):
        return EXIT_CAPACITY
    return EXIT_FAILURE
