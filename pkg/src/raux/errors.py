"""Exception types shared across the workbench."""


class RauxError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RauxError):
    """Input outside the domain an operation supports."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class ConvergenceError(RauxError):
    """An iterative or adaptive scheme failed to reach the requested accuracy."""


class PreconditionError(RauxError):
    """A documented precondition was violated; the message names the offender."""


class DegenerateError(PreconditionError):
    """Degenerate configuration (e.g. coincident frequencies)."""


class BoundaryZeroError(RauxError):
    """A zero sits on (or too close to) a contour used for winding counts."""


class ClusterError(RauxError):
    """Subdivision hit its floor while more than one zero remained inside."""


class CoverageError(RauxError):
    """A query needs zero data outside the scanned coverage."""
