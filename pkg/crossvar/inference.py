import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Union

from crossvar.algorithms.closed import ClosedFormVariance
from crossvar.algorithms.forest import ForestVariance
from crossvar.algorithms.frequency import FrequencyVariance, SubgraphCountVariance
from crossvar.algorithms.general import GeneralVariance
from crossvar.algorithms.naive import NaiveVariance
from crossvar.algorithms.reuse import ReuseVariance
from crossvar.core.algorithm import VarianceAlgorithm, VarianceResult
from crossvar.core.census import CensusReport, fast_census
from crossvar.core.config import OracleConfig, DEFAULT_CONFIG
from crossvar.core.errors import NotAForestError
from crossvar.core.graph import Graph, compute_q, is_forest
from crossvar.core.layout import RLA, ExpectationTable, resolve_layout
from crossvar.evaluation.significance import Tail, chebyshev_pvalue_bound, zscore

logger = logging.getLogger(__name__)

AUTO = "auto"

ALGORITHM_MAP = {
    "naive": NaiveVariance,
    "subgraph": SubgraphCountVariance,
    "frequency": FrequencyVariance,
    "general": GeneralVariance,
    "reuse": ReuseVariance,
    "forest": ForestVariance,
    "closed": ClosedFormVariance,
}


def select_algorithm(graph: Graph, hint: str = AUTO, available: Optional[Iterable[str]] = None) -> str:
    """Resolve an algorithm hint to an algorithm label.

    ``auto`` picks the forest algorithm for acyclic graphs and the reuse
    algorithm otherwise. Explicit labels are returned as they are.

    Args:
        graph (Graph): Input graph.
        hint (str, optional): ``auto`` or an algorithm label. Defaults to "auto".
        available (Optional[Iterable[str]], optional): Accepted labels. Defaults to the keys of ALGORITHM_MAP.

    Raises:
        ValueError: if the label is unknown.
        NotAForestError: if the forest algorithm is requested on a graph with a cycle.

    Returns:
        str: Algorithm label
    """
    labels = set(available if available is not None else ALGORITHM_MAP)
    if hint == AUTO:
        return "forest" if is_forest(graph) else "reuse"
    if hint not in labels:
        raise ValueError(f"Unknown algorithm {hint!r}, expected one of {sorted(labels) + [AUTO]}")
    if hint == "forest" and not is_forest(graph):
        raise NotAForestError(f"{graph} has a cycle, the forest algorithm does not apply")
    return hint


class CrossingStatistics:
    """Main interface for the statistics of edge crossings under a random layout"""

    def __init__(
        self,
        layout: Union[str, ExpectationTable] = RLA,
        config: Optional[OracleConfig] = None,
    ) -> None:
        """Initialize the interface

        Args:
            layout (Union[str, ExpectationTable], optional): ``"rla"``, the path of a layout table
                                                             or a table. Defaults to "rla".
            config (Optional[OracleConfig], optional): Cost guards of the oracle-backed algorithms.
                                                       Defaults to the package defaults.
        """
        self.table = layout if isinstance(layout, ExpectationTable) else resolve_layout(layout)
        self.config = config or DEFAULT_CONFIG
        self._algorithms: Dict[str, VarianceAlgorithm] = {
            name: algorithm(self.config) for name, algorithm in ALGORITHM_MAP.items()
        }

    @property
    def algorithms(self) -> List[str]:
        return list(self._algorithms.keys())

    def census(self, graph: Graph) -> CensusReport:
        return fast_census(graph)

    def expectation(self, graph: Graph) -> Fraction:
        return self.table.expectation(compute_q(graph))

    def variance(self, graph: Graph, algorithm: str = AUTO) -> VarianceResult:
        """Compute the exact variance of the number of crossings.

        Args:
            graph (Graph): Input graph.
            algorithm (str, optional): ``auto`` or a registered algorithm label. Defaults to "auto".

        Raises:
            ValueError: if the algorithm is unknown.
            NotAForestError: if the forest algorithm is requested on a graph with a cycle.

        Returns:
            VarianceResult: Exact variance and expectation
        """
        name = select_algorithm(graph, algorithm, available=self._algorithms)
        logger.info(f"Computing the variance of {graph} with {name!r} on layout {self.table.name!r}")
        return self._algorithms[name].run(graph, self.table)

    def zscore(self, graph: Graph, observed: int, algorithm: str = AUTO) -> float:
        """z-score of an observed number of crossings.

        Args:
            graph (Graph): Input graph.
            observed (int): Observed number of crossings.
            algorithm (str, optional): Variance algorithm. Defaults to "auto".

        Raises:
            ValueError: if ``observed`` is negative.
            DegenerateStatisticError: if the variance is zero.

        Returns:
            float: (C - E[C]) / sqrt(V[C])
        """
        if observed < 0:
            raise ValueError(f"A number of crossings can not be negative, got {observed}")
        result = self.variance(graph, algorithm)
        return zscore(observed, result.expectation, result.variance)

    def pvalue_bound(
        self,
        graph: Graph,
        observed: int,
        tail: Union[Tail, str] = Tail.TWO_SIDED,
        algorithm: str = AUTO,
    ) -> Fraction:
        """Chebyshev (two-sided) or Cantelli (one-sided) bound on the p-value.

        Args:
            graph (Graph): Input graph.
            observed (int): Observed number of crossings.
            tail (Union[Tail, str], optional): Tail of the test. Defaults to Tail.TWO_SIDED.
            algorithm (str, optional): Variance algorithm. Defaults to "auto".

        Raises:
            DegenerateStatisticError: if the variance is zero.

        Returns:
            Fraction: Upper bound on the p-value
        """
        if observed < 0:
            raise ValueError(f"A number of crossings can not be negative, got {observed}")
        result = self.variance(graph, algorithm)
        return chebyshev_pvalue_bound(observed, result.expectation, result.variance, tail)

    def add_algorithm(self, algorithm: VarianceAlgorithm) -> None:
        """Register an algorithm under its name

        Args:
            algorithm (VarianceAlgorithm): Algorithm instance.

        Raises:
            ValueError: When the algorithm type is not recognized.
        """
        if not isinstance(algorithm, VarianceAlgorithm):
            raise ValueError("Unknown algorithm")
        self._algorithms[algorithm.name] = algorithm

    def remove_algorithm(self, name: str) -> None:
        """Remove an algorithm from the module

        Args:
            name (str): Name of the algorithm to remove
        """
        if name in self._algorithms:
            del self._algorithms[name]
