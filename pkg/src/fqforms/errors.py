"""Shared exception types."""


class BudgetError(RuntimeError):
    """An enumeration or search exceeded its configured budget."""


class CapabilityError(RuntimeError):
    """The requested computation is outside the supported parameter range."""
