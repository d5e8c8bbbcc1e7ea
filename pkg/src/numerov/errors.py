"""Exception hierarchy shared by the solver modules."""

from __future__ import annotations


class NumerovError(Exception):
    """Base class for every error raised by this package."""


class StepFailure(NumerovError):
    """A recurrence step hit a vanishing denominator."""

    def __init__(self, message: str, index: int | None = None, x: float | None = None):
        if index is not None:
            message = f"{message} (grid index {index}" + (f", x={x!r})" if x is not None else ")")
        super().__init__(message)
        self.index = index
        self.x = x


class DomainError(NumerovError, ValueError):
    """Coefficient requested outside the domain of the potential."""


class EnergyOutsideWell(NumerovError):
    """No outer classical turning point exists on the grid for this energy."""


class MatchPointNode(NumerovError):
    """The left solution vanishes at the match point, so it cannot be rescaled."""


class DegenerateSolution(NumerovError):
    """A wavefunction with zero norm was passed where a state was expected."""


class ConvergenceError(NumerovError):
    """Bisection ran out of iterations before meeting either tolerance."""

    def __init__(self, message: str, best_estimate: float, mismatch: float):
        super().__init__(f"{message}; best estimate eps={best_estimate!r}, g={mismatch!r}")
        self.best_estimate = best_estimate
        self.mismatch = mismatch


class PartialResultError(NumerovError):
    """The energy scan reached the top of the well with too few brackets."""

    def __init__(self, message: str, brackets: list[tuple[float, float]]):
        super().__init__(f"{message}; found {len(brackets)} bracket(s): {brackets}")
        self.brackets = brackets


class SolveError(NumerovError):
    """One or more requested states failed; carries the states that did succeed."""

    def __init__(self, solutions: list, failures: list[tuple[str, str]]):
        lines = "; ".join(f"{where}: {why}" for where, why in failures)
        super().__init__(f"{len(failures)} state(s) failed: {lines}")
        self.solutions = solutions
        self.failures = failures


class ConfigError(NumerovError, ValueError):
    """Invalid solve configuration. Names the key and, when known, the line."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        where = ""
        if key is not None:
            where = f"{key}: "
        if line is not None:
            where = f"line {line}: {where}"
        super().__init__(where + message)
        self.key = key
        self.line = line
