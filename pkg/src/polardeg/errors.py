"""Exception types shared across the package."""


class PolarDegError(Exception):
    """Base class for all errors raised by this package."""


# fields
class CompositeCharacteristic(PolarDegError, ValueError):
    pass


class UnsupportedSize(PolarDegError, ValueError):
    pass


class DivisionByZero(PolarDegError, ZeroDivisionError):
    pass


# poly
class PolySyntaxError(PolarDegError, SyntaxError):
    """Malformed polynomial text. ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, position, text=""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class UnknownVariable(PolarDegError, ValueError):
    pass


class NotHomogeneous(PolarDegError, ValueError):
    pass


class InexactDivision(PolarDegError, ArithmeticError):
    pass


class ExponentOverflow(PolarDegError, OverflowError):
    pass


# ideals
class NoStabilization(PolarDegError, RuntimeError):
    pass


class NotZeroDimensional(PolarDegError, ValueError):
    pass


# invariants / blowup
class GenericityFailure(PolarDegError, RuntimeError):
    pass


class NotDominant(PolarDegError, ValueError):
    pass


class DegenerateLinearSystem(PolarDegError, ValueError):
    pass


class CharacteristicDividesDegree(PolarDegError, ValueError):
    """Raised by ``polar_map`` when p | deg f and the caller did not opt in."""


class CharacteristicDividesDegreeWarning(UserWarning):
    pass


class NotSquareFree(PolarDegError, ValueError):
    pass


class PointNotOnSingularLocus(PolarDegError, ValueError):
    pass


class UnsupportedDimension(PolarDegError, ValueError):
    pass


class ConsistencyViolation(PolarDegError, AssertionError):
    pass


class FieldTooLarge(PolarDegError, ValueError):
    pass


# exceptions that mean "the input violates a mathematical precondition"
PRECONDITION_ERRORS = (
    NotZeroDimensional,
    NotDominant,
    DegenerateLinearSystem,
    CharacteristicDividesDegree,
    NotSquareFree,
    PointNotOnSingularLocus,
    UnsupportedDimension,
    GenericityFailure,
    NotHomogeneous,
)
