"""Exception types shared across the package."""


class FvwenoError(Exception):
    """Base class for errors raised by fvweno."""


class ConfigurationError(FvwenoError):
    """Invalid run configuration: unknown problem, bad scheme parameters,
    mismatched grids, missing fixtures, and similar user-facing mistakes."""


class StateError(FvwenoError):
    """Physically inadmissible state (nonpositive density or pressure)."""


class DivergenceError(FvwenoError):
    """The time integration produced non-finite or inadmissible values.

    Carries the Runge-Kutta stage (1..3) and, when raised from a time loop,
    the step number at which the blow-up was detected.
    """

    def __init__(self, message, stage=None, step=None):
        super().__init__(message)
        self.stage = stage
        self.step = step

    def __str__(self):
        where = []
        if self.step is not None:
            where.append(f"step {self.step}")
        if self.stage is not None:
            where.append(f"stage {self.stage}")
        suffix = f" ({', '.join(where)})" if where else ""
        return super().__str__() + suffix


class GoldenMismatchError(FvwenoError):
    """A golden-table check found entries outside tolerance."""
