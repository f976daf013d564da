"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the documented domain of an operation."""


class GroupMismatchError(DomainError):
    """An element or subgroup does not belong to the expected group."""


class CapacityError(RuntimeError):
    """An exhaustive or table-backed computation exceeds its size guard."""
