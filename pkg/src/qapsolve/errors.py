"""Exception hierarchy for the solver library."""


class QapError(Exception):
    """Base class for all library errors."""


class MalformedInstanceError(QapError):
    """Instance stream has the wrong token count; carries the byte offset."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


class TokenParseError(QapError):
    """A token could not be parsed as an integer."""

    def __init__(self, message: str, byte_offset: int | None = None, line: int | None = None):
        where = []
        if byte_offset is not None:
            where.append(f"byte offset {byte_offset}")
        if line is not None:
            where.append(f"line {line}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.byte_offset = byte_offset
        self.line = line


class DomainError(QapError, ValueError):
    """A value is outside the domain required by an operation's contract."""


class IntegrityError(QapError):
    """Stored data failed re-validation (e.g. solution cost mismatch)."""
