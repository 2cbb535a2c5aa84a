"""Exception types shared across the toolkit.

Every error raised by the library derives from :class:`ToolkitError`, so
callers can catch one base class. Most also derive from the closest builtin
(ValueError, RuntimeError, ...) to stay friendly to generic handlers.
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class NotHermitian(ToolkitError, ValueError):
    """Matrix fails the Hermiticity tolerance."""


class TraceNotOne(ToolkitError, ValueError):
    """Density matrix trace deviates from 1 beyond tolerance."""


class NotPositive(ToolkitError, ValueError):
    """Density matrix has an eigenvalue below the clamp window."""


class ConvergenceFailure(ToolkitError, RuntimeError):
    """Eigensolver failed to converge."""


class DimensionOverflow(ToolkitError, ValueError):
    """Requested operator would exceed the configured dimension cap."""


class DimensionMismatch(ToolkitError, ValueError):
    """Operands live on Hilbert spaces of different dimensions."""


class ParameterOutOfRange(ToolkitError, ValueError):
    """Scalar parameter outside its documented domain."""


class UndefinedWeight(ToolkitError, ArithmeticError):
    """Metric weight function evaluated to zero or a non-finite value."""


class InvalidPOVM(ToolkitError, ValueError):
    """POVM elements are not PSD or do not sum to the identity."""


class ZeroInformation(ToolkitError, ArithmeticError):
    """Fisher information is (numerically) zero; the precision bound diverges."""


class ZeroTheta(ToolkitError, ValueError):
    """Phase parameter theta must be nonzero."""


class NonMonotone(ToolkitError, ValueError):
    """Criterion value is not monotone in the family parameter."""


class NotCrossed(ToolkitError, ValueError):
    """Criterion never exceeds its bound on the sampled parameter range."""


class InvalidShots(ToolkitError, ValueError):
    """Shot count must be a positive integer."""


class InvalidBasis(ToolkitError, ValueError):
    """Projector set is not an orthogonal, complete measurement basis."""


class Unphysical(ToolkitError, ValueError):
    """Reconstructed matrix is not positive semidefinite."""


class NotXState(ToolkitError, ValueError):
    """Matrix has support outside the diagonal + anti-diagonal pattern."""


class ConfigError(ToolkitError, ValueError):
    """Command-line configuration is invalid."""


class InputParseError(ToolkitError, ValueError):
    """Input file does not match the expected schema."""


class ComputationError(ToolkitError, RuntimeError):
    """A computation failed; wraps the originating module error."""


class IoError(ToolkitError, OSError):
    """Report could not be written."""
