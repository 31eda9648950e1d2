"""Exception types shared across the package."""


class GraphonLabError(Exception):
    """Base class for all package-specific errors."""


class BudgetExceededError(GraphonLabError):
    """An enumeration or contraction would touch more cells than allowed."""


class UnknownGraphError(GraphonLabError):
    """Requested catalog graph does not exist."""


class EmptySetError(GraphonLabError):
    """An occupancy vector describes a set of measure zero."""


class MismatchedStructureError(GraphonLabError):
    """Two step objects do not share block structure or measures."""


class NonConvergenceError(GraphonLabError):
    """An iterative generator failed to reach its residual target."""


class UncertifiedDensityError(GraphonLabError):
    """A claimed local density exceeds what the exact solver certifies."""


class NotRegularError(GraphonLabError):
    """A check requires a degree-regular host graphon."""


class PatternNotRegularError(GraphonLabError):
    """A check requires a degree-regular pattern graph."""


class DegenerateInstanceError(GraphonLabError):
    """The instance has local density zero, so the check is vacuous."""


class ConfigError(GraphonLabError):
    """A run configuration could not be parsed."""
