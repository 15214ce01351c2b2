"""Exception hierarchy shared by every module in the package."""


class PolytopeError(Exception):
    """Base class for all errors raised by polyrecon."""


class ValidationError(PolytopeError, ValueError):
    """Input data violates a structural invariant."""


class InstanceTooLarge(PolytopeError):
    """An enumeration would exceed its configured resource bound."""


class ReconstructionError(PolytopeError):
    """A reconstruction pipeline could not produce a verified lattice."""


class NotCappedError(ReconstructionError):
    """A dual graph was not recognized as that of a capped cubical polytope."""
