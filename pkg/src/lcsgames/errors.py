"""Exception hierarchy shared across the package."""


class LcsError(Exception):
    """Base class for all package-specific errors."""


class ParseError(LcsError):
    """Malformed word, file, or identifier."""


class DimensionMismatchError(LcsError):
    """Operands with incompatible (n, d) or matrix dimensions."""


class SizeCapError(LcsError):
    """An enumeration or computation exceeds its configured cap."""


class InvalidRepresentationError(LcsError):
    """A map claimed to be a representation fails its relation checks."""


class ValidationError(LcsError):
    """A structural or numerical invariant fails on given data."""


class PreconditionError(LcsError):
    """An operation was called outside its documented precondition."""


class IncompleteWitnessError(LcsError):
    """A witness map is missing a required entry."""
