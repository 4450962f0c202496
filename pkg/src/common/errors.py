"""
Exception hierarchy shared by all workbench modules.
"""

from typing import Any, Dict, Optional


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""


class DomainError(WorkbenchError, ValueError):
    """An argument lies outside the domain of the operation."""


class NonDecreasingStep(WorkbenchError):
    """An iterated map failed f(m) < m for some m > 1."""

    def __init__(self, m: int, image: int):
        super().__init__(f"iterate is not decreasing: f({m}) = {image}")
        self.m = m
        self.image = image


class NonSquare(WorkbenchError):
    """Determinant requested for a non-square matrix."""


class LengthMismatch(WorkbenchError):
    """Vectors of different lengths were combined."""


class ArityMismatch(WorkbenchError):
    """Input vector length differs from the circuit's number of inputs."""


class FieldMismatch(WorkbenchError):
    """Operands live over different fields."""


class ShapeMismatch(WorkbenchError):
    """Circuits or matrices have incompatible shapes."""


class DepthTooSmall(WorkbenchError):
    """A transformation needs more layers than the circuit has."""


class CircuitFormatError(WorkbenchError):
    """A circuit, graph or matrix document is malformed."""


class PreconditionUnmet(WorkbenchError):
    """The input does not satisfy the operation's precondition."""


class GvViolation(WorkbenchError):
    """Requested rate and distance lie outside the Gilbert-Varshamov region."""


class FaninUnbounded(WorkbenchError):
    """Collapse mode requested for circuits without an output fanin bound."""


class UsageError(WorkbenchError):
    """Command-line usage error."""


class BudgetExceeded(WorkbenchError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, what: str, required: int, budget: int):
        super().__init__(f"{what}: {required} items exceed budget {budget}")
        self.what = what
        self.required = required
        self.budget = budget


class PathBudgetExceeded(BudgetExceeded):
    """Path enumeration exceeded the configured path-count cap."""

    def __init__(self, cap: int):
        super().__init__("path enumeration", cap + 1, cap)


class TrialsExhausted(WorkbenchError):
    """A sample-and-verify loop used all its trials without success."""

    def __init__(self, what: str, trials: int, statistics: Optional[Dict[str, Any]] = None):
        super().__init__(f"{what}: no verified instance in {trials} trials")
        self.what = what
        self.trials = trials
        self.statistics = dict(statistics or {})
