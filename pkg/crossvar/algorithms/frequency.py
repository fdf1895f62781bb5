from typing import Optional

from crossvar.core.algorithm import VarianceAlgorithm, VarianceResult
from crossvar.core.census import fast_census
from crossvar.core.config import OracleConfig
from crossvar.core.frequency import ProductType, frequencies_from_census
from crossvar.core.graph import Graph
from crossvar.core.layout import ExpectationTable
from crossvar.evaluation.brute import frequencies_from_subgraph_counts


class SubgraphCountVariance(VarianceAlgorithm):
    """Variance from f_w = a_w n(F_w), counting the patterns by brute force."""

    name = "subgraph"

    def compute(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        frequencies = frequencies_from_subgraph_counts(graph, self.config)
        return VarianceResult(
            variance=frequencies.variance(table),
            expectation=table.expectation(frequencies[ProductType.T24]),
            algorithm=self.name,
        )


class FrequencyVariance(VarianceAlgorithm):
    """Variance from the closed forms of the frequencies over a fast census."""

    name = "frequency"

    def compute(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        census = fast_census(graph)
        frequencies = frequencies_from_census(census, graph.m)
        return VarianceResult(
            variance=frequencies.variance(table),
            expectation=table.expectation(census.q),
            algorithm=self.name,
            census=census,
        )


def variance_subgraph_counts(
    graph: Graph, table: ExpectationTable, config: Optional[OracleConfig] = None
) -> VarianceResult:
    return SubgraphCountVariance(config).run(graph, table)


def variance_frequency(
    graph: Graph, table: ExpectationTable, config: Optional[OracleConfig] = None
) -> VarianceResult:
    return FrequencyVariance(config).run(graph, table)
