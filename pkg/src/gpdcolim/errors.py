"""Exception hierarchy shared by every module of the package."""


class GpdError(Exception):
    """Base class for all errors raised by gpdcolim."""


class ViewError(GpdError, ValueError):
    """A poset view is malformed or an element lies outside it."""


class PresentationError(GpdError, ValueError):
    """A groupoid or group presentation violates its invariants."""


class FunctorError(GpdError, ValueError):
    """A functor presentation is ill-formed or fails validation."""


class SchemaError(GpdError, ValueError):
    """A diagram or target file does not conform to the documented schema."""


class FuelExhausted(GpdError):
    """A bounded search ran out of fuel before finishing."""

    def __init__(self, message, spent=0):
        super().__init__(message)
        self.spent = spent


class UnverifiedDiagram(GpdError):
    """A diagram whose strictness is not verified was passed to a pipeline."""


class SmithOverflowError(GpdError, ArithmeticError):
    """An intermediate entry of a Smith normal form left the 64-bit range."""
