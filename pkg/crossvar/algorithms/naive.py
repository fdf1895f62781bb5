import logging
from typing import Optional

from crossvar.core.algorithm import VarianceAlgorithm, VarianceResult
from crossvar.core.config import OracleConfig
from crossvar.core.frequency import ProductType
from crossvar.core.graph import Graph
from crossvar.core.layout import ExpectationTable
from crossvar.evaluation.brute import frequencies_brute

logger = logging.getLogger(__name__)


class NaiveVariance(VarianceAlgorithm):
    """
    O(m^4) variance: classify every pair of Q x Q and weight each type by
    its expectation. Bounded by ``OracleConfig.max_pair_products``.
    """

    name = "naive"

    def compute(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        frequencies = frequencies_brute(graph, self.config)
        logger.debug(f"Naive frequencies of {graph}: {frequencies}")
        # f_24 counts each element of Q paired with itself
        q = frequencies[ProductType.T24]
        return VarianceResult(
            variance=frequencies.variance(table),
            expectation=table.expectation(q),
            algorithm=self.name,
        )


def variance_naive(
    graph: Graph, table: ExpectationTable, config: Optional[OracleConfig] = None
) -> VarianceResult:
    return NaiveVariance(config).run(graph, table)
