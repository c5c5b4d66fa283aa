"""Exception types shared across the package."""


class CoalitionError(ValueError):
    """Raised for coalition masks outside 1..2^n - 1."""


class InfeasibleSetError(RuntimeError):
    """A polyhedron required to be nonempty turned out to be empty.

    Signals a violated standing assumption (empty bounding set or empty core),
    not a numerical failure.
    """

    def __init__(self, message, *, player=None, values=None):
        super().__init__(message)
        self.player = player
        self.values = values


class AssumptionViolationError(RuntimeError):
    """A validated model assumption (weights, connectivity, constant grand
    value, consensus rate bound) does not hold for the given data."""


class ConfigurationError(ValueError):
    """Invalid experiment configuration."""
