"""Exception types shared across the package."""


class TimerankError(Exception):
    """Base class for all timerank errors."""


class ParseError(TimerankError):
    """Malformed input text; the message carries row/column context."""


class SchemeCoverageError(TimerankError):
    """A rank fell beyond the last boundary of the binning scheme."""


class UnknownItemError(TimerankError):
    """An item identifier is not part of the table or map."""
