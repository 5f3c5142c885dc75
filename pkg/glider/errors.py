"""
Domain errors for the glider toolkit

Every error is a ValueError so callers that only guard against bad input keep working.
Verification failures are never raised; they are report fields.
"""


class GliderError(ValueError):
    """Base class for every domain error"""


class InvalidRank(GliderError):
    """Rank outside the supported range for its family"""


class DimensionMismatch(GliderError):
    """Matrix shapes do not agree"""


class NotNilpotent(GliderError):
    """Jordan type requested for a matrix that is not nilpotent"""


class NotInAlgebra(GliderError):
    """Matrix is not an element of the realized Lie algebra"""


class FamilyMismatch(GliderError):
    """Canonical embedding requested between different families"""


class RankOrder(GliderError):
    """Source rank exceeds target rank"""


class ConditionOneFails(GliderError):
    """The embedding does not preserve the root-space decomposition"""


class AssumptionViolated(GliderError):
    """A starred simple root is not simple or positive in the target"""


class NotHomogeneous(GliderError):
    """An enveloping algebra element that must be a weight vector is not"""


class AlgebraMismatch(GliderError):
    """An element lives in a different algebra than the one requested"""


class InadmissibleLabel(GliderError):
    """Partition is not the Jordan type of any nilpotent element of the family"""


class SpecError(GliderError):
    """A JSON input document is malformed"""


class UsageError(GliderError):
    """Command line arguments cannot be interpreted"""
