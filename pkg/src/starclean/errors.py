"""Shared exception types for the starclean package."""


class CapacityError(Exception):
    """A construction would exceed the configured group-order cap."""


class BudgetError(Exception):
    """An enumeration would exceed the configured budget."""

    def __init__(self, message: str, cardinality: int | None = None):
        super().__init__(message)
        self.cardinality = cardinality


class CarrierMismatchError(ValueError):
    """Operands live over different (group, ring) carriers."""


class NotInFComponentError(ValueError):
    """Element is not annihilated by e = (1+s)/2."""


class PreconditionError(ValueError):
    """A stated hypothesis of the operation is violated."""


class InvalidParameterError(ValueError):
    """A presentation parameter was supplied that the presentation does not use."""


class NonUnitError(ArithmeticError):
    """Inverse requested for a non-unit."""


class CharDividesError(ValueError):
    """The field characteristic divides a quantity it must not divide."""


class RingSpecError(ValueError):
    """Rejected coefficient-ring specification (2 must be a unit, p prime, ...)."""


class ParseError(ValueError):
    """Malformed group or ring spec string."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DiscrepancyError(RuntimeError):
    """Theory-side and brute-force verdicts disagree: an implementation bug."""
