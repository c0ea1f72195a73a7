"""Exception hierarchy.

``ValidationError`` subclasses signal bad user input (CLI exit 1),
``DegenerateError`` subclasses signal inputs that are well formed but sit on a
degenerate locus (CLI exit 2).
"""


class BifocalError(Exception):
    pass


class ValidationError(BifocalError, ValueError):
    pass


class ShapeError(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class ProfileError(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


class DegenerateError(BifocalError, ArithmeticError):
    pass


class RankError(DegenerateError):
    pass


class InvertibilityError(RankError):
    pass


class IntersectingCentersError(DegenerateError):
    pass


class DegenerateRayError(DegenerateError):
    pass


class ExceptionalLocusError(DegenerateError):
    pass


class GenerationError(DegenerateError):
    """Seeded sampling ran out of retries."""


class ConsistencyError(BifocalError, AssertionError):
    """An internal identity failed; indicates a bug, never bad input."""
