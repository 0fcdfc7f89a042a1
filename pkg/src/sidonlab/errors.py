"""Shared exception types."""


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class BudgetExceededError(RuntimeError):
    """A brute-force enumeration would exceed the configured tuple budget."""
