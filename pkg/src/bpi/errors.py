"""Exception types."""


class BpiError(Exception):
    """Base class for errors raised by this package."""


class ResourceError(BpiError):
    """A configured enumeration cap was exceeded."""


class PreconditionError(BpiError, ValueError):
    """An operation was called on inputs outside its domain."""


class NotPiSeparableError(PreconditionError):
    """The group is not pi-separable for the requested prime set."""


class InternalError(BpiError):
    """A consistency check inside the engine failed (a bug, not bad input)."""


class TheoremViolation(BpiError):
    """A verified mathematical statement failed on a concrete instance.

    ``context`` carries the diagnostic payload (group, prime set, character,
    trace) so batch runners can report it verbatim.
    """

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context

    def __str__(self):
        base = super().__str__()
        if not self.context:
            return base
        extra = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{base} [{extra}]"
