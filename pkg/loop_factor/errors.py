"""
Exception hierarchy for loop-factor.

Every error carries the process exit code the CLI reports for it:
1 for violated input preconditions, 2 for algorithm guards, 3 for parse errors.
"""

from typing import Optional


class LoopFactorError(Exception):
    """Base class for all loop-factor errors."""

    exit_code = 2


# =============================================================================
# Parse errors (exit 3)
# =============================================================================

class ParseError(LoopFactorError):
    """A document or scalar could not be read."""

    exit_code = 3

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        path: Optional[str] = None,
    ):
        self.line = line
        self.column = column
        self.path = path
        location = ""
        if line is not None:
            location = f" (line {line}, column {column})"
        elif path:
            location = f" (at {path})"
        super().__init__(f"{message}{location}")


# =============================================================================
# Validation errors (exit 1)
# =============================================================================

class ValidationError(LoopFactorError):
    """Input violates a documented precondition or invariant."""

    exit_code = 1


class NonSplittingDenominator(ValidationError):
    """A denominator has an irreducible factor of degree >= 2 over Q(i)."""


class EvalAtPole(ValidationError):
    """A rational function was evaluated at one of its poles."""


class DimensionMismatch(ValidationError):
    """Ambient dimensions or form parity do not fit."""


class NotIsotropic(ValidationError):
    """A subspace that must be isotropic is not."""


class RealExtensionImpossible(ValidationError):
    """V + conj(V) is not isotropic, so no real Lagrangian contains V."""


class NoFixedLine(ValidationError):
    """v -> s*conj(v) has no fixed line in the given subspace."""


class DegeneratePlane(ValidationError):
    """A real 2-plane is degenerate or not real."""


class InvalidRealPole(ValidationError):
    """A loop has a pole on the real axis."""


class NotAMember(ValidationError):
    """A loop fails the membership, reality or normalization test."""


class NotTwisted(ValidationError):
    """A loop fails the twisting condition of the requested flavor."""


class InvalidFactorSpec(ValidationError):
    """A simple factor specification violates its invariants."""


class AlphaOnAxis(ValidationError):
    """A q-element was requested at a real or purely imaginary pole."""


class HolomorphyPrecondition(ValidationError):
    """The dressed loop has a pole at the dressing pole."""


class SingularAtAlpha(ValidationError):
    """The dressed loop is not invertible at the dressing pole."""


class PoleClash(ValidationError):
    """Permutability was requested for poles alpha in {beta, conj(beta)}."""


class SingularLoop(ValidationError):
    """A loop with identically vanishing determinant was inverted."""


class NotInPhat(ValidationError):
    """An affine element does not lie in the -1 eigenspace of the involution."""


# =============================================================================
# Algorithm failures (exit 2)
# =============================================================================

class AlgorithmFailure(LoopFactorError):
    """An internal guard fired; valid input never gets here."""

    exit_code = 2


class NonTermination(AlgorithmFailure):
    """The iteration budget of a factorization was exhausted."""


class RankSurprise(AlgorithmFailure):
    """A rank differs from the value the structure theory forces."""


class NoSplittingLine(AlgorithmFailure):
    """No line R splits a G2 pair into two coassociative factors."""


class LiouvilleViolation(AlgorithmFailure):
    """A pole-free normalized residual is not the identity loop."""


class IdentityMismatch(AlgorithmFailure):
    """A product identity that is asserted at runtime failed."""


class SingularGram(AlgorithmFailure):
    """The hermitian Gram matrix of a basis was singular."""


class ClosureViolation(AlgorithmFailure):
    """A bracket left the affine g2 model."""
