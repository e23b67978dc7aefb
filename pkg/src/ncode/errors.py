"""Exception hierarchy shared by the library and the command line."""


class NcodeError(Exception):
    """Base class for all errors raised by ncode."""


class PreconditionError(NcodeError, ValueError):
    """An input violates a stated precondition (e.g. a code is not intersection complete)."""


class CapExceededError(NcodeError):
    """A size cap guarding an exponential computation was exceeded."""
