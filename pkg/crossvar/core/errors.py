from typing import Iterable, Optional


class GraphParseError(ValueError):
    """Raised when an edge-list line cannot be parsed."""

    def __init__(self, line: int, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


class GraphValidationError(ValueError):
    """Raised when a parsed graph is not a simple undirected graph."""


class LayoutTableError(ValueError):
    """Raised when a layout table is incomplete or inconsistent."""

    def __init__(self, offenders: Iterable[str]) -> None:
        self.offenders = list(offenders)
        super().__init__("invalid layout table: " + "; ".join(self.offenders))


class AlgorithmNotApplicableError(ValueError):
    """Raised when an algorithm does not apply to the given graph or layout."""


class NotAForestError(AlgorithmNotApplicableError):
    """Raised when a forest-only algorithm receives a graph with a cycle."""


class DegenerateStatisticError(ValueError):
    """Raised when a statistic is undefined because the variance is zero."""


class OracleBudgetError(ValueError):
    """Raised when a brute-force oracle would exceed its configured budget."""

    def __init__(self, oracle: str, size: int, limit: Optional[int]) -> None:
        self.oracle = oracle
        self.size = size
        self.limit = limit
        super().__init__(f"{oracle}: size {size} exceeds the configured limit {limit}")


class InconsistentCensusError(RuntimeError):
    """Raised when census quantities contradict each other."""
