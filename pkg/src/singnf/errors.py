"""Error types and the exit codes they map to."""
from __future__ import annotations


class SingNFError(Exception):
    exit_code = 1


class PreconditionError(SingNFError):
    """Input outside the class the algorithm handles."""

    exit_code = 2
    reason = "precondition"


class ZeroGermError(PreconditionError):
    reason = "zero_or_constant"


class CorankError(PreconditionError):
    reason = "corank"


class NonIsolatedError(PreconditionError):
    reason = "non_isolated"


class DegenerateBoundaryError(PreconditionError):
    reason = "degenerate_boundary"


class NoFacetError(PreconditionError):
    reason = "no_facet"


class NotNormalizedError(PreconditionError):
    reason = "not_normalized"


class InternalLiftError(SingNFError):
    """A lift that theory guarantees did not exist; indicates a bug."""

    exit_code = 3
    reason = "internal_lift"
