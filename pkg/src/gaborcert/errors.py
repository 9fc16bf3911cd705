"""Exception and warning types shared across the package.

Two error families matter for exit-code mapping in the CLI: precondition
violations (caller passed something the operation does not accept) and
numerical degeneracies discovered while computing (vanishing sums, kernel
singularities, parameters that cannot be snapped to a finite grid).
"""


class GaborcertError(Exception):
    """Base class for all package-specific errors."""


class PreconditionError(GaborcertError):
    """An input violates a documented precondition of the operation."""


class NumericalError(GaborcertError):
    """Base class for degeneracies detected during a computation."""


class ZeroSumError(NumericalError):
    """Every term of a lattice sum vanished up to the truncation limit."""


class DegenerateError(NumericalError):
    """A denominator sum is zero, so the density ratio is undefined."""


class DegenerateAngleError(NumericalError):
    """Fractional Fourier angle too close to a multiple of pi.

    The quadrature kernel blows up there; callers should pass the exact
    special angle (0 or pi, which have closed-form actions) instead.
    """


class ParameterNotRepresentable(NumericalError):
    """Lattice parameters cannot be snapped onto the discrete model grid."""


class DivergentSeriesError(NumericalError):
    """A closed-form series was requested outside its convergence region."""


class TruncationRiskWarning(UserWarning):
    """Input decay is too weak for the requested truncated computation."""
