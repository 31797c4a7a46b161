"""Exception types raised across the package."""


class PlanarError(Exception):
    """Base class for all package errors."""


class BadInput(PlanarError, ValueError):
    """Malformed graph text or argument."""


class NonPlanarEmbedding(PlanarError):
    pass


class SelfLoop(PlanarError):
    pass


class DisconnectedGraph(PlanarError):
    pass


class Overflow(PlanarError):
    pass


class ParameterTooSmall(PlanarError, ValueError):
    pass


class InvalidHole(PlanarError, IndexError):
    pass


class InfeasiblePrice(PlanarError):
    def __init__(self, message, dart=None):
        super().__init__(message)
        self.dart = dart


class NegativeCycleDetected(PlanarError):
    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class MalformedPath(PlanarError):
    pass


class BadSpec(PlanarError, ValueError):
    pass
