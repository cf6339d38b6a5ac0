"""Exception hierarchy.

Every failure mode that callers are expected to handle gets its own class;
the CLI maps them onto exit codes (parse/validation -> 2, resource -> 3).
"""

from __future__ import annotations


class FsingError(Exception):
    """Base class for all package errors."""


class ParseError(FsingError):
    """Source text rejected, with a byte offset into the input when known."""

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        self.offset = offset
        self.line = line
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif offset is not None:
            where = f" (offset {offset})"
        super().__init__(message + where)


class RingMismatchError(FsingError):
    """Operands live in different rings."""


class ResourceLimitError(FsingError):
    """A configured resource cap was exceeded; the answer was not computed."""


class DegreeCapError(ResourceLimitError):
    """A dense oracle refused an instance above its degree cap."""


class BoxExceededError(ResourceLimitError):
    """An exponent fell outside the verified certificate box."""


class PurityError(FsingError):
    """Operation requires a purity-verified embedding and none is available."""

    def __init__(self, message: str, witness: tuple | None = None):
        self.witness = witness
        if witness is not None:
            message = f"{message}; witness exponent {witness}"
        super().__init__(message)


class NotInSemigroupError(FsingError):
    """A polynomial supposed to lie in the subring has a term outside it."""


class RadicalHypothesisError(FsingError):
    """nu-invariant requested for J not contained in the radical of a."""


class CoefficientReductionError(FsingError):
    """Rational coefficient cannot be reduced mod p (p divides a denominator)."""
