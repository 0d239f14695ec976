"""Exception types shared across the package."""


class BallPickError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(BallPickError):
    """A parameter violates its stated constraint (e.g. |a| >= 1 for a Mobius map)."""


class DomainViolation(BallPickError):
    """An evaluation point lies outside the domain of the map."""


class ChainMismatch(BallPickError):
    """Adjacent nodes of a composition chain have incompatible domains."""


class NoConvergence(BallPickError):
    """An iterative procedure exhausted its budget without converging."""


class NotExtremal(BallPickError):
    """An operation that requires extremal data was given non-extremal data."""


class NoSolution(BallPickError):
    """No interpolant exists at the requested tolerance."""


class OutsideB(BallPickError):
    """A target value lies outside the reachable disc of the degenerate family."""


class DegenerateFrame(BallPickError):
    """The degenerate frame collapses (second coordinate zero) and the target is not forced."""


class DegenerateInput(BallPickError):
    """Input nodes coincide or are otherwise degenerate."""


class InconsistentData(BallPickError):
    """Two independent readings of the same quantity disagree beyond tolerance."""
