"""Exception hierarchy shared by all engine layers."""


class FrobforgeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FrobforgeError):
    """Invalid scalar operation, e.g. inverting zero or a composite characteristic."""


class StructuralError(FrobforgeError):
    """Operands that do not belong together: mismatched rings, shapes, or orders."""


class ExponentOverflowError(FrobforgeError):
    """An exponent left the 32-bit regime (bracket powers multiply exponents)."""


class ResourceLimitError(FrobforgeError):
    """A configurable ceiling (pair count, pushforward size) was exceeded."""


class ZeroRingError(FrobforgeError):
    """The quotient ring is zero (1 lies in the ideal); downstream ops refuse it."""


class MinimalityError(FrobforgeError):
    """A complex cannot be minimalized over the ring itself.

    Raised when a differential entry has a nonzero constant term but no
    inverse in the quotient ring, so the unit pivot exists only after
    localizing at the irrelevant maximal ideal.
    """


class InternalConsistencyError(FrobforgeError):
    """Two independent computations of the same invariant disagree: engine bug."""


class VerificationError(FrobforgeError):
    """An executable criterion check failed.  Carries the evidence report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DslError(FrobforgeError):
    """Syntax or semantic error in the input DSL, with source position."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
