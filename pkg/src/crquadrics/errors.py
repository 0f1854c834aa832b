"""Exception taxonomy shared by the whole package.

Every domain error derives from :class:`CRQError` so callers (and the CLI)
can map failure modes to exit codes without string matching.
"""

from __future__ import annotations


class CRQError(Exception):
    """Base class for all errors raised by crquadrics."""


class DivisionByZero(CRQError, ZeroDivisionError):
    pass


class DimensionMismatch(CRQError):
    pass


class ContainsW(CRQError):
    pass


class MalformedInput(CRQError):
    pass


class InconsistentConjugation(CRQError):
    pass


class Degenerate(CRQError):
    """The Hermitian part is degenerate where nondegeneracy is required."""


class ZeroDirection(CRQError):
    pass


class DegenerateSlice(CRQError):
    """Slice quadratic part vanishes identically."""


class UnsupportedDimension(CRQError):
    pass


class UnsupportedModel(CRQError):
    """Model outside the exactly decidable normal-form families."""


class ZeroEntry(CRQError):
    pass


class NotCR(CRQError):
    """A polynomial failed the tangential CR condition.

    Carries the certificate: the field index pair and the nonzero
    image polynomial.
    """

    def __init__(self, pair, certificate, message=None):
        self.pair = pair
        self.certificate = certificate
        super().__init__(message or f"not CR: field L{pair} gives a nonzero result")


class NotCROnModel(CRQError):
    """Degree-by-degree extension hit a non-CR homogeneous part."""

    def __init__(self, degree, pair, certificate):
        self.degree = degree
        self.pair = pair
        self.certificate = certificate
        super().__init__(f"degree {degree} part is not CR on the quadric model (field L{pair})")


class NoSolution(CRQError):
    """The extension linear system was inconsistent (should not happen
    for nondegenerate flat quadrics; signals a bug or bad model)."""

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"extension system inconsistent at degree {degree}")


class NonExtendable(CRQError):
    """One-variable reindexing failed; carries offending (k, j) pairs."""

    def __init__(self, pairs):
        self.pairs = list(pairs)
        super().__init__(f"not a function of (z, z*zbar): offending exponents {self.pairs}")


class TruncationTooShort(CRQError):
    pass


class Mismatch(CRQError):
    """Cross-check failure; carries the differing coefficients."""

    def __init__(self, details, message=None):
        self.details = details
        super().__init__(message or "slice consistency mismatch")


class ParseError(CRQError):
    def __init__(self, message, location=None):
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")


class InvariantViolation(CRQError):
    pass


class NotO3(InvariantViolation):
    """Perturbation term of total degree below three."""
