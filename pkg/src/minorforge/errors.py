"""Exception hierarchy shared by every module."""


class MinorforgeError(Exception):
    """Base class for all library errors."""


class OutOfRange(MinorforgeError, ValueError):
    pass


class SelfLoop(MinorforgeError, ValueError):
    pass


class NotAnEdge(MinorforgeError, ValueError):
    pass


class InfeasibleParameters(MinorforgeError, ValueError):
    pass


class KeyMismatch(MinorforgeError, ValueError):
    pass


class BudgetExceeded(MinorforgeError):
    """A desk-scale search cap was hit. This is not a negative answer."""


class PathViolation(MinorforgeError, ValueError):
    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


class XNotProper(MinorforgeError, ValueError):
    pass


class NotBipartite(MinorforgeError, ValueError):
    pass


class PreconditionViolated(MinorforgeError, ValueError):
    pass


class HallFailure(MinorforgeError, RuntimeError):
    """Raised when a Hall condition that should hold fails (indicates a bug)."""


class StuckNoUnusedNeighbour(MinorforgeError):
    pass


class NoSeparatorSmallEnough(MinorforgeError):
    pass


class InvalidDecomposition(MinorforgeError, ValueError):
    pass


class DensityPreconditionFailed(MinorforgeError):
    def __init__(self, message, separation=None):
        super().__init__(message)
        self.separation = separation


class LinkageNotFound(MinorforgeError):
    pass


class SlotAllocationFailed(MinorforgeError, RuntimeError):
    pass
