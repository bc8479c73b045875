class TemporalForestError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(TemporalForestError, ValueError):
    """An operation was called in a state where its precondition does not hold.

    The structure is left unchanged.
    """


class UnknownVertexError(PreconditionError):
    pass


class NotAPathError(PreconditionError):
    """A path-only engine was queried inside a tree that is not a path."""
