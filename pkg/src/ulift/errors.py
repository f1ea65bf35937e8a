"""Exception hierarchy shared across the package.

Validation errors mean the input data is malformed or violates a documented
precondition; domain errors mean the data is fine but the requested point or
operation is outside the region where the computation is defined.
"""


class ValidationError(ValueError):
    """Malformed or inconsistent input data."""


class DomainError(ValueError):
    """Input is structurally valid but outside the operation's domain."""


class ConvergenceError(DomainError):
    """Evaluation point violates the normal-convergence bound of a product."""


class WeylVectorRequired(DomainError):
    """No builtin Weyl vector rule applies; the caller must supply one."""


class FieldZeroDivision(ZeroDivisionError):
    """Inverse of zero requested in the quadratic field."""
