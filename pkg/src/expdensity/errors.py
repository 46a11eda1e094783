"""Exception types shared across the package."""


class ExpDensityError(Exception):
    """Base class for all errors raised by expdensity."""


class SetSpecError(ExpDensityError, ValueError):
    """A set-spec string is malformed or describes a set without 1."""


class BudgetError(ExpDensityError):
    """A request exceeds the configured memory or precision budget."""
