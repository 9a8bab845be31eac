"""Exception types shared across the package."""


class BranchedHFKError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameters(BranchedHFKError, ValueError):
    """Knot or cover parameters outside the supported domain."""


class NotSymmetrizable(BranchedHFKError, ValueError):
    """No integral shift makes the Laurent polynomial palindromic."""


class NotUnit(BranchedHFKError, ValueError):
    """The polynomial does not evaluate to +1 or -1 at T = 1."""


class InfiniteH1(BranchedHFKError):
    """The closed manifold has positive first Betti number."""


class AsymmetricGrading(BranchedHFKError):
    """A grading multiset cannot be centered on an integer."""
