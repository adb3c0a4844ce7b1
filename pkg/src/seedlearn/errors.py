"""Exception hierarchy shared by all modules."""


class SeedlearnError(Exception):
    """Base class for every error raised by this package."""


class ContractError(SeedlearnError, ValueError):
    """An operation was called with arguments violating its precondition."""


class ResourceCapError(SeedlearnError, RuntimeError):
    """A configured size cap (dimension, class size, retries) would be exceeded."""


class ParseError(SeedlearnError, ValueError):
    """Malformed input file.  ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ProtocolError(SeedlearnError, RuntimeError):
    """A teacher broke the query protocol (e.g. returned a non-counterexample)."""
