"""Exception taxonomy shared by all modules.

Infeasible and NumericalFailure are deliberately distinct: the first is a
solver-certified "no solution exists at the requested tolerance", the second
is "the solver broke down and proved nothing". The interval search treats
them differently (shrink-and-retry vs accept-as-boundary).
"""


class SectorCertError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SectorCertError):
    """Matrix or vector shapes are inconsistent."""


class Uncontrollable(SectorCertError):
    """Controllability matrix of (A, B) is rank deficient."""


class InvalidParameter(SectorCertError):
    """A function family or disturbance parameter violates its constraints."""


class EmptyRegion(SectorCertError):
    """No s > 0 satisfies both sector inequalities."""


class ZeroGainSum(SectorCertError):
    """Scalar-wrapped region is undefined because sum(k) = 0."""


class VertexBudgetExceeded(SectorCertError):
    """2**n vertices exceed the configured enumeration cap."""


class Infeasible(SectorCertError):
    """The feasibility oracle certified that no solution exists."""


class NumericalFailure(SectorCertError):
    """The solver failed without proving infeasibility."""


class NoFeasibleInterval(SectorCertError):
    """The multistep search could not certify even one interval."""


class ConfigError(SectorCertError):
    """Analysis config failed schema validation or semantic checks."""
