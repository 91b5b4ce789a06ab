class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class TheoremInapplicable(DomainError):
    """The closed-form Youden threshold does not apply to this pair; use the numeric path."""


class NumericalError(ArithmeticError):
    """A numerical routine produced a non-finite or inconsistent result."""


class DegenerateSampleError(DomainError):
    """A sample has zero standard deviation, so its t statistic is undefined."""
