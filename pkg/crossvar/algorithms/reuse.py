import logging
from typing import Dict, Iterator, Optional, Tuple

from crossvar.algorithms.general import edge_pass_census
from crossvar.core.algorithm import (
    VarianceAlgorithm,
    VarianceResult,
    general_layout_variance,
)
from crossvar.core.census import NeighborIntersection, neighbor_intersection
from crossvar.core.config import OracleConfig
from crossvar.core.graph import Edge, Graph
from crossvar.core.layout import ExpectationTable

logger = logging.getLogger(__name__)


class PairHashTable:
    """
    Memo of common neighborhood summaries keyed by unordered vertex pairs.

    Keys are stored as ``(min(u, v), max(u, v))``.
    """

    def __init__(self, graph: Graph) -> None:
        self.graph = graph
        self._table: Dict[Edge, NeighborIntersection] = {}

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, pair: Tuple[int, int]) -> bool:
        u, v = pair
        return self._key(u, v) in self._table

    @staticmethod
    def _key(u: int, v: int) -> Edge:
        return (u, v) if u < v else (v, u)

    def compute_and_store(self, u: int, v: int) -> NeighborIntersection:
        value = neighbor_intersection(self.graph, u, v)
        self._table[self._key(u, v)] = value
        return value

    def lookup(self, u: int, v: int) -> NeighborIntersection:
        """Return the summary of ``(u, v)``, computing it on first use.

        Args:
            u (int): First vertex.
            v (int): Second vertex.

        Returns:
            NeighborIntersection: |c(u, v)| and the degree sum of c(u, v)
        """
        value = self._table.get(self._key(u, v))
        if value is None:
            value = self.compute_and_store(u, v)
        return value

    def items(self) -> Iterator[Tuple[Edge, NeighborIntersection]]:
        return iter(self._table.items())


class ReuseVariance(VarianceAlgorithm):
    """
    General algorithm that computes every common neighborhood once and
    reuses it, in O(n + max degree * |H|) time.
    """

    name = "reuse"

    def compute(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        memo = PairHashTable(graph)
        census = edge_pass_census(graph, memo.lookup)
        logger.debug(f"Reuse census of {graph} with |H| = {len(memo)}")
        return VarianceResult(
            variance=general_layout_variance(census, graph.m, table),
            expectation=table.expectation(census.q),
            algorithm=self.name,
            census=census,
            hash_table_size=len(memo),
        )


def variance_general_reuse(
    graph: Graph, table: ExpectationTable, config: Optional[OracleConfig] = None
) -> VarianceResult:
    return ReuseVariance(config).run(graph, table)
