"""Exception hierarchy for qflux."""


class QfluxError(Exception):
    """Base class for all qflux errors."""


class GridMismatchError(QfluxError):
    """Two fields that must share a grid do not."""


class NonFiniteError(QfluxError):
    """A field or derived quantity contains NaN/Inf away from masked nodes."""


class GridTooNarrowError(QfluxError):
    """Sampled amplitude at the grid boundary exceeds the decay threshold."""


class NodeSingularityError(QfluxError):
    """Velocity requested at a point where the density is below the node threshold."""


class BoundaryContaminationError(QfluxError):
    """Propagated amplitude reached the grid edges without an absorbing layer."""


class UnstableStepError(QfluxError):
    """Norm drifted beyond the unitarity tolerance during propagation."""


class StartAtNodeError(QfluxError):
    """Trajectory initial condition sits on a node of the guiding field."""


class NodeAtTargetError(QfluxError):
    """Separatrix target position sits on a node at the final time."""


class BisectionDisagreementError(QfluxError):
    """Backward-integrated separatrix and forward bisection disagree."""


class ParaxialViolationError(QfluxError):
    """Refractive-index contrast too large for the paraxial reduction."""


class ConfigValidationError(QfluxError):
    """Scenario configuration failed schema or physics validation."""
