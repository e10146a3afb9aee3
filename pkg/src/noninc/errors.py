"""Exception classes shared across the package."""


class NonincError(Exception):
    """Base class for every error raised by this package."""


# field construction
class NotPrime(NonincError, ValueError):
    pass


class ReducibleModulus(NonincError, ValueError):
    pass


class OrderTooLarge(NonincError, ValueError):
    pass


class WrongCharacteristic(NonincError, ValueError):
    pass


class ZeroCoefficient(NonincError, ValueError):
    pass


# planes
class IndexOutOfRange(NonincError, IndexError):
    pass


class NotSquare(NonincError, ValueError):
    pass


class BadOrder(NonincError, ValueError):
    pass


class AxiomViolation(NonincError, ValueError):
    """An imported matrix is not a projective plane.

    ``witness`` names the offending row/column (or pair of them).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FormatError(NonincError, ValueError):
    pass


# bounds
class NotPerfectSquare(NonincError, ValueError):
    pass


# arcs
class BadParameters(NonincError, ValueError):
    pass


class OddOrderUnsupported(NonincError, ValueError):
    pass


class ConstructionCheckFailed(NonincError, RuntimeError):
    pass


class NotExtremal(NonincError, ValueError):
    pass


# search
class TooLarge(NonincError, ValueError):
    pass


class PlaneMismatch(NonincError, ValueError):
    pass


class BudgetExhausted(NonincError, RuntimeError):
    """Raised when the node budget runs out; ``result`` holds the best incumbent."""

    def __init__(self, result):
        super().__init__(
            f"node budget exhausted after {result.nodes} nodes; best s={result.value}"
        )
        self.result = result
