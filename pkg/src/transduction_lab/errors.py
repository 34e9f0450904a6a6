"""Exception types shared across the package.

Everything derives from :class:`TransductionError` so callers can catch the
whole family at once. The subclasses double as the standard builtin types
(``ValueError`` / ``ArithmeticError``) so idiomatic ``pytest.raises(ValueError)``
checks keep working.
"""


class TransductionError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(TransductionError, ValueError):
    """A matrix has the wrong shape, an odd dimension, or inconsistent labels."""


class ConventionError(TransductionError, ValueError):
    """Input violates the doubled-structure / ordering conventions.

    Typical trigger: a ladder-basis matrix whose quadrature image has an
    imaginary residue above threshold, signalling broken conjugate pairing.
    """


class PreconditionError(TransductionError, ValueError):
    """An operation's documented precondition does not hold."""


class StabilityError(TransductionError, ValueError):
    """Parameters lie outside the dynamically stable region."""


class SingularityError(TransductionError, ArithmeticError):
    """A linear solve sits at (or too close to) a singular point.

    Carries the offending condition number when known.
    """

    def __init__(self, message, condition_number=None):
        super().__init__(message)
        self.condition_number = condition_number


class PhysicalityError(TransductionError, ValueError):
    """A covariance block fails the V + i*Omega >= 0 physicality test."""


class OutOfRegimeError(TransductionError, ValueError):
    """Requested operating point is outside the validity regime of the method."""


class ConfigError(TransductionError, ValueError):
    """Bad sweep configuration: unknown preset, axis, key, or malformed value."""


class NearSingularWarning(UserWarning):
    """Result computed within a factor ~10 of the conditioning limit."""


class RegimeWarning(UserWarning):
    """Parameters were clamped or are marginal for the requested analysis."""
