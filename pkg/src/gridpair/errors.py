"""Exception types shared across the package."""

from __future__ import annotations


class GridpairError(Exception):
    """Base class for routing-pipeline failures."""


class InfeasibleBudgetError(GridpairError):
    """No even degree budget q with 2 <= q <= floor(t/6) - 1 fits the demands."""


class BaseSolverExhaustedError(GridpairError):
    """The complete-graph solver failed; within the guaranteed bounds this is a bug."""


class ClaimViolationError(GridpairError):
    """A layer or column subproblem exceeded its degree bound (upstream bug, never user error)."""

    def __init__(self, claim: str, message: str) -> None:
        super().__init__(f"claim {claim}: {message}")
        self.claim = claim


class SizeLimitError(GridpairError):
    """Instance too large for exhaustive search."""


class FormatError(GridpairError):
    """Malformed instance or routing file."""

    def __init__(self, message: str, line: int | None = None) -> None:
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
