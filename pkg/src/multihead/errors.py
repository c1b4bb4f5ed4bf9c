"""Exception types shared across the package."""


class MultiheadError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(MultiheadError, ValueError):
    """An operation was called outside its contract (bad word, bad configuration, ...)."""


class ValidationError(MultiheadError):
    """A machine description is structurally invalid."""

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class ConformanceError(MultiheadError):
    """A Turing machine or run violates the conventions required for valid computations."""


class ObliviousnessViolation(MultiheadError):
    """A machine assumed to be data-independent was shown not to be."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(MultiheadError):
    """A text file could not be parsed. Carries the offending line number."""

    def __init__(self, message, line=None, token=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message + (f" (at {token!r})" if token is not None else ""))
        self.line = line
        self.token = token
