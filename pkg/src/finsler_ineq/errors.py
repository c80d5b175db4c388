"""Exception types shared across the package."""


class DomainError(ValueError):
    """A vector lies outside the conic domain of a norm.

    ``constraint`` names the violated inequality, e.g. ``"component v1 must be > 0"``.
    """

    def __init__(self, constraint, family=None):
        self.constraint = constraint
        self.family = family
        prefix = f"{family}: " if family else ""
        super().__init__(f"{prefix}domain: {constraint}")


class SamplingExhaustedError(RuntimeError):
    """Rejection sampling could not find enough points inside a cone."""

    def __init__(self, family, trials, index=None):
        self.family = family
        self.trials = trials
        self.index = index
        where = f" (sample {index})" if index is not None else ""
        super().__init__(f"sampling exhausted for {family} after {trials} trials{where}")


class InvariantError(RuntimeError):
    """An internal consistency check failed (a proven identity did not hold numerically)."""


class EvaluationError(ArithmeticError):
    """A numerical routine produced a non-finite value."""
