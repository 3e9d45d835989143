"""Exception types shared across the package."""


class ProdCspError(Exception):
    """Base class for all errors raised by this package."""


class ArityError(ProdCspError, ValueError):
    """An input's length does not match the arity it is used at."""


class IndexRangeError(ProdCspError, IndexError):
    """A variable position or index is out of range."""


class ArgumentError(ProdCspError, ValueError):
    """An argument violates a documented precondition."""


class DomainError(ProdCspError, ValueError):
    """A value lies outside the operation's domain (e.g. zero weight where positivity is required)."""


class CapExceededError(ProdCspError, ValueError):
    """An exhaustive solver was asked to enumerate beyond its configured cap."""


class CertificateError(ProdCspError, ValueError):
    """A solver or reduction was given a missing or invalid certificate."""


class ReductionError(ProdCspError, ValueError):
    """An instance transform was applied to an unsuitable input."""


class ParseError(ProdCspError, ValueError):
    """A text-format input failed to parse.  Carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.reason = message
