"""Error types shared across the package."""


class QuasivarError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(QuasivarError):
    """Malformed source text (signature, sentence, structure, a-type files)."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class SortError(QuasivarError):
    """Well-sortedness violation in a term, atom or sentence."""


class ValidationError(QuasivarError):
    """Semantic precondition failure: bad tables, non-hom maps, failed side conditions."""


class ScopeError(QuasivarError):
    """A bounded computation would exceed its configured scope or a guard limit."""


class TheoremViolation(QuasivarError):
    """A checked theorem instance failed.  Indicates a bug, never a user error."""
