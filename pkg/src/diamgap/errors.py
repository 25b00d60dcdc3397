"""Exception hierarchy shared by every module."""


class DiamgapError(Exception):
    """Base class for all library errors."""


class InputError(DiamgapError, ValueError):
    """A precondition on an argument was violated."""


class SizeBudgetError(DiamgapError):
    """A construction would exceed the configured vertex+edge budget."""


class GenerationFailure(DiamgapError):
    """A randomized search exhausted its retry budget."""


class OracleViolation(DiamgapError):
    """A gap oracle gave answers inconsistent with any diameter value."""


class UnreachableDiameterError(DiamgapError):
    """The graph is not (strongly) connected, so its diameter is undefined."""


class FormatError(DiamgapError, ValueError):
    """A text file does not follow the expected format."""
