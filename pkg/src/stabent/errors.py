"""Exception types shared across the package."""


class StabentError(Exception):
    """Base class for all package errors."""


class ParseError(StabentError):
    """Malformed textual input; carries the offending position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class ValidationError(StabentError):
    """Input is well-formed but violates a stabilizer-code contract."""


class ResourceLimitError(StabentError):
    """Request exceeds a configured size guard (dense build, enumeration)."""


class InternalError(StabentError):
    """Consistency check failed; indicates a bug, not bad input."""
