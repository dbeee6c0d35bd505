"""Exception types shared across the package."""

__all__ = [
    "DomainError",
    "InfeasiblePointError",
    "NumericalError",
    "SupercriticalError",
]


class DomainError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class InfeasiblePointError(ValueError):
    """A coupling point has a cell probability below the feasible range."""


class NumericalError(RuntimeError):
    """A search or refinement failed to converge."""


class SupercriticalError(ValueError):
    """The full-zero branching process is supercritical, so the augmentation
    density formula does not apply.  Carries the offending offspring mean."""

    def __init__(self, message: str, offspring_mean: float):
        super().__init__(message)
        self.offspring_mean = offspring_mean
