"""Exception types shared across the library."""


class RescalimError(Exception):
    """Base class for all library errors."""


class DivisionByZero(RescalimError):
    """Division by an element that is zero in the ambient field."""


class UnboundedMagnitude(RescalimError):
    """A magnitude tends to infinity where a bounded one was required."""


class UnboundedAtScale(RescalimError):
    """An element has infinite norm at the requested scale."""


class ScaleMismatch(RescalimError):
    """Two objects live at different working scales."""


class DegenerateTuple(RescalimError):
    """Two of the points handed to a cross-ratio coincide."""


class TruncationInsufficient(RescalimError):
    """A truncated expansion is too short to decide the current question.

    Callers should retry with a larger expansion depth.
    """


class CycleMeetsHoles(RescalimError):
    """A periodic orbit meets the hole support, so multipliers do not pass
    to the limit."""


class RootOfUnityMultiplier(RescalimError):
    """An indifferent tangent map has a root-of-unity multiplier of order
    ``self.order`` != 1; the caller must pass to that iterate."""

    def __init__(self, order):
        super().__init__(f"multiplier is a primitive root of unity of order {order}")
        self.order = order


class SearchExhausted(RescalimError):
    """A bounded search finished without certifying the required object."""


class ParseError(RescalimError):
    """Syntax error in the family definition language."""

    def __init__(self, message, line=1, col=0):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class CoprimalityError(RescalimError):
    """Numerator and denominator of a family share a factor."""


class EmptyDegree(RescalimError):
    """A parsed family has degree zero."""
