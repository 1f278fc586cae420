"""Exception types shared across the package."""


class PmsimError(Exception):
    """Base class for all package errors."""


class GameFormatError(PmsimError):
    """Malformed game document (bad shape, bad distribution, unknown keys)."""


class DominatedActionError(PmsimError):
    """Some action is a best response nowhere on the outcome simplex."""


class DegenerateGameError(PmsimError):
    """Cell boundaries are in non-generic position (e.g. a triple tie on a shared face)."""


class NotLocallyObservableError(PmsimError):
    """Some neighboring pair admits no observer vector."""


class FixedPointError(PmsimError):
    """Stationary distribution could not be computed for the given matrix."""


class LPSolverError(PmsimError):
    """Internal failure of the dense simplex solver."""
