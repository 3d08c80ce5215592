"""Exception taxonomy for the design pipeline.

Every failure mode that callers are expected to branch on gets its own
class; plain contract violations (bad argument shapes etc.) raise the
usual ValueError/TypeError.
"""


class SgodError(Exception):
    """Base class for all pipeline-specific errors."""


class DegreeMismatch(SgodError):
    """Operands live at different signed-permutation degrees."""


class NotDisjoint(SgodError):
    """Matrix supports intersect where disjointness is required."""


class NotCentral(SgodError):
    """A coefficient fails the exact commutation check against its partner."""


class GramMismatch(SgodError):
    """A doubling step's gram post-assertion failed."""


class QuasireverseViolation(SgodError):
    """Sequence pair is not quasireverse-compatible."""


class CompositionUnsupported(SgodError):
    """A composed candidate pair failed the autocorrelation oracle."""


class BudgetExceeded(SgodError):
    """Exhaustive search space larger than the configured budget."""


class NotGolay(SgodError):
    """Length admits no complex Golay pair under the membership test."""


class NotReachable(SgodError):
    """Length passes membership but no pair is derivable from the
    available primitives."""


class OddTarget(SgodError):
    """Two-variable decomposition requested for an odd target."""


class OffsetCollision(SgodError):
    """Circulant family supports intersect; offset bookkeeping violated."""


class ComplementarityFailure(SgodError):
    """A circulant family's summed gram is not the expected diagonal."""


class DenseCapExceeded(SgodError):
    """Requested dense matrix exceeds the configured order cap."""


class VerificationFailure(SgodError):
    """An object failed its exact verification."""


class RelationViolation(SgodError):
    """Recorded generator relations do not hold at the new chain level."""
