"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands live on Hilbert spaces of different dimensions."""


class OptimizerFailure(RuntimeError):
    """No optimizer start converged, or the objective misbehaved."""


class ScenarioError(ValueError):
    """A scenario document is malformed or violates its invariants."""
