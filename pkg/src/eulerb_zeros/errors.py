"""Exception types shared across the package."""

from __future__ import annotations


class PoleProximityError(ArithmeticError):
    """Evaluation point is at, or numerically indistinguishable from, a pole.

    Raised by logarithmic-derivative and Stieltjes evaluations when the
    denominator vanishes exactly or falls below the precision-dependent
    threshold that would make the result meaningless.
    """


class PoleProximityWarning(UserWarning):
    """Evaluation point is close enough to a pole that the result is dominated
    by a single term; the value is still returned."""


class BranchCutError(ArithmeticError):
    """Complex argument is too close to the branch cut [0, 1] for the working
    precision; square root and logarithm choices would be unreliable there."""


class NonSquarefreeError(ArithmeticError):
    """A polynomial expected to have simple roots has a repeated factor.

    Root isolation refuses to continue because isolating intervals for
    multiple roots would silently change their meaning.
    """


class CacheFormatError(ValueError):
    """A persisted file failed its version or integrity checks on load.

    Never silently migrated or overwritten; the caller decides what to do.
    """
