import logging
from typing import Optional

from crossvar.core.algorithm import (
    VarianceAlgorithm,
    VarianceResult,
    forest_layout_variance,
)
from crossvar.core.census import CensusReport
from crossvar.core.config import OracleConfig
from crossvar.core.errors import NotAForestError
from crossvar.core.graph import (
    Graph,
    compute_K,
    compute_phi1,
    compute_phi2,
    compute_q,
    degree_aggregates,
    is_forest,
)
from crossvar.core.layout import ExpectationTable
from crossvar.core.utils import exact_div

logger = logging.getLogger(__name__)


def forest_census(graph: Graph) -> CensusReport:
    """Census of an acyclic graph in O(n) time.

    Without cycles every common neighborhood of two adjacent vertices is
    empty, so the subgraph counts reduce to degree expressions.

    Args:
        graph (Graph): A forest.

    Returns:
        CensusReport: Census with zero triangle and C4 counts
    """
    agg = degree_aggregates(graph)
    k, xi = graph.degrees, agg.xi

    mu1 = paths4 = paths5 = lambda1 = lambda2 = 0
    for s, t in graph.edges():
        ks, kt = k[s], k[t]
        mu1 += xi[s] + xi[t]
        paths4 += (ks - 1) * (kt - 1)
        paths5 += (kt - 1) * (xi[s] - kt - ks + 1) + (ks - 1) * (xi[t] - kt - ks + 1)
        partial = (kt - 1) * (xi[s] - kt) + (ks - 1) * (xi[t] - ks)
        lambda1 += partial
        lambda2 += partial + (ks - 1) * (kt - 1) * (ks + kt)

    return CensusReport(
        q=compute_q(graph),
        K=compute_K(graph, agg),
        phi1=compute_phi1(graph, agg),
        phi2=compute_phi2(graph, agg),
        lambda1=lambda1,
        lambda2=lambda2,
        mu1=exact_div(mu1, 2, "mu1"),
        mu2=0,
        nP4=paths4,
        nP5=exact_div(paths5, 2, "nP5"),
        nC3=0,
        nC4=0,
        nPaw=0,
        nC3L2=0,
    )


class ForestVariance(VarianceAlgorithm):
    """
    Linear-time variance for forests.
    """

    name = "forest"

    def validate(self, graph: Graph, table: ExpectationTable) -> None:
        if not is_forest(graph):
            raise NotAForestError(f"{graph} has a cycle, the forest algorithm does not apply")

    def compute(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        census = forest_census(graph)
        return VarianceResult(
            variance=forest_layout_variance(census, graph.m, table),
            expectation=table.expectation(census.q),
            algorithm=self.name,
            census=census,
        )


def variance_forest(
    graph: Graph, table: ExpectationTable, config: Optional[OracleConfig] = None
) -> VarianceResult:
    return ForestVariance(config).run(graph, table)
