"""Exception hierarchy shared by all modules.

DomainError covers conditions a caller can act on (bad input, missing
roots, unsupported mode); InternalError marks violated invariants that
should never occur on valid input. The CLI maps them to exit codes 2
and 3 respectively.
"""


class GFCurveError(Exception):
    pass


class DomainError(GFCurveError):
    """Invalid input or a limitation the caller can work around."""


class InternalError(GFCurveError):
    """A mathematical invariant failed; indicates a bug or bad state."""


class FieldMismatchError(DomainError):
    """Operands belong to different coefficient fields."""


class ReducibleModulusError(DomainError):
    """The declared modulus was exposed as reducible during inversion."""


class FieldTooSmallError(DomainError):
    """A required k-th root does not exist in the declared field."""

    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = tuple(missing)


class GenericModeError(DomainError):
    """Symbolic fixed-point mode cannot certify this computation."""


class TruncationError(DomainError):
    """Series window too short even after escalation; raise explicitly."""
