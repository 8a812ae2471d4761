"""Exception types shared across the package."""


class FinloopError(Exception):
    pass


class ParseError(FinloopError):
    """Malformed input document (groupoid, group, space or cover file)."""


class InvalidStructure(FinloopError):
    """Input data violates the axioms it is required to satisfy."""


class BoundExceeded(FinloopError):
    """A configured enumeration bound was hit before the computation finished."""

    def __init__(self, what, bound, estimate=None):
        self.what = what
        self.bound = bound
        self.estimate = estimate
        msg = f"{what}: bound {bound} exceeded"
        if estimate is not None:
            msg += f" (size estimate {estimate})"
        super().__init__(msg)


class VerificationError(FinloopError):
    """A theorem-level consistency check failed; this always indicates a bug."""
