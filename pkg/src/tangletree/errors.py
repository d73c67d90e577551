"""Exception types shared by the library and the CLI exit-code mapping."""


class TangleTreeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TangleTreeError, ValueError):
    """Malformed input: bad file, bad matrix, incomplete table, bad arguments."""


class ResourceError(TangleTreeError):
    """An exhaustive algorithm was asked to run above its element cap."""


class PreconditionError(TangleTreeError, ValueError):
    """An operation was called on arguments violating its precondition."""
