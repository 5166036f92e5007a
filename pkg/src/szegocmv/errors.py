"""Exception hierarchy.

Domain errors (bad input, violated preconditions) derive from ``DomainError``;
numerical breakdowns derive from ``NumericalFailureError``.  The CLI maps the
two families to exit codes 1 and 2.
"""


class DomainError(ValueError):
    pass


class InvalidCoefficientError(DomainError):
    """A Verblunsky coefficient outside the admissible set."""


class OutOfGapError(DomainError):
    """Spectral parameter outside the arc R_A."""


class AdmissibilityError(DomainError):
    """Root ``w`` violates Re w > sqrt(1 - A^2), |Im w| < A."""


class NotHyperbolicError(DomainError):
    pass


class SizeError(DomainError):
    """Problem size beyond a supported bound."""


class UnsupportedMeasureError(DomainError):
    pass


class SingularityError(DomainError):
    pass


class NumericalFailureError(ArithmeticError):
    """Ill-conditioning detected by an internal consistency check."""
