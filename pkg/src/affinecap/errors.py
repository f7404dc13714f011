"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class UnsupportedQueryError(DomainError):
    """The requested evaluation is not defined for this body representation."""


class SchemaError(ValueError):
    """A body description violates the JSON schema.

    ``field_path`` points at the offending entry, e.g. ``facets[3].normal``.
    """

    def __init__(self, message, field_path=""):
        self.field_path = field_path
        if field_path:
            message = f"{field_path}: {message}"
        super().__init__(message)


class IntegrationError(RuntimeError):
    """A quadrature evaluation failed (non-finite integrand, no convergence)."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its budget; carries the last residual."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class InequalityViolationError(RuntimeError):
    """A certified bound ordering failed beyond tolerance; carries the terms."""

    def __init__(self, message, terms=None):
        self.terms = dict(terms or {})
        super().__init__(message)
