"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when user-supplied data violates a documented precondition.

    The message always names the offending field or value so CLI users can
    fix their input files.  Maps to exit status 1.
    """


class InvariantViolation(RuntimeError):
    """Raised when an internal cross-check fails.

    This indicates a bug in the library, never bad input.  Maps to exit
    status 2.
    """
