"""Exception hierarchy.

The CLI maps these onto exit codes: parse problems exit 1, violated
preconditions exit 2, and failed hypotheses (e.g. a vanishing determinant)
exit 3.
"""


class SyzImpError(Exception):
    """Base class for all library errors."""


class ShapeError(SyzImpError, ValueError):
    pass


class ParseError(SyzImpError, ValueError):
    pass


class HomogeneityError(ParseError):
    pass


class DegreeMismatchError(ParseError):
    pass


class ContextMismatchError(SyzImpError, ValueError):
    pass


class PreconditionError(SyzImpError):
    """Input violates a documented precondition (gcd, rank, arity, ...)."""


class HypothesisFailure(SyzImpError):
    """A structural hypothesis failed at runtime, e.g. ``det M`` vanished identically."""


class InternalConsistencyError(SyzImpError):
    """A verified identity did not hold; indicates a bug rather than bad input."""


class StabilizationError(SyzImpError):
    """Saturation did not stabilize within the configured window."""


class CoprimalityWarning(UserWarning):
    """Probabilistic check suggests the generators share a common factor."""
