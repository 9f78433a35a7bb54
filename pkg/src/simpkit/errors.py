"""Exception hierarchy shared by all simpkit modules."""


class SimpkitError(Exception):
    """Base class for every error raised by simpkit."""


class InvalidFaceError(SimpkitError, ValueError):
    """A simplex that was expected to be a face of a complex is not one."""


class PreconditionError(SimpkitError, ValueError):
    """An operation was called on input outside its domain."""


class InvalidMoveError(SimpkitError, ValueError):
    """A bistellar move is not applicable to the given complex."""


class ParseError(SimpkitError, ValueError):
    """Malformed textual input. ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)


class FormatVersionError(SimpkitError):
    """A document declares a format version this library does not read."""


class CatalogError(SimpkitError):
    """The catalog file is malformed or an entry failed its load-time check."""


class QueryError(SimpkitError, ValueError):
    """Base class for query-language errors."""


class QuerySyntaxError(QueryError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class QueryNameError(QueryError):
    """Unknown attribute or function name in a query."""


class QueryIndexError(QueryError):
    """An index expression evaluated to a position below 1."""
