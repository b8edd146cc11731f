"""Exception types shared across the toolkit."""


class RmaError(Exception):
    pass


class StructuralError(RmaError, ValueError):
    """Arity or shape mismatch between operands."""


class DomainError(RmaError, ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceError(RmaError, RuntimeError):
    """A size or dimension budget was exceeded."""


class InexactDivisionError(RmaError, ArithmeticError):
    """Exact division left a nonzero remainder."""


class ConsistencyError(RmaError, AssertionError):
    """An internal identity that must hold did not."""
