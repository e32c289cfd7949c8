class TopoincError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TopoincError, ValueError):
    """An argument lies outside the domain of an operation."""


class BuildError(DomainError):
    """A construction could not be assembled into a consistent model."""


class BudgetExceeded(TopoincError):
    """A search refused to continue past its configured budget."""
