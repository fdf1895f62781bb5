import logging
from typing import Callable, Optional

from crossvar.core.algorithm import (
    VarianceAlgorithm,
    VarianceResult,
    general_layout_variance,
)
from crossvar.core.census import CensusReport, NeighborIntersection, neighbor_intersection
from crossvar.core.config import OracleConfig
from crossvar.core.graph import (
    Graph,
    compute_K,
    compute_phi1,
    compute_phi2,
    compute_q,
    degree_aggregates,
)
from crossvar.core.layout import ExpectationTable
from crossvar.core.utils import exact_div

logger = logging.getLogger(__name__)

Intersect = Callable[[int, int], NeighborIntersection]


def edge_pass_census(graph: Graph, intersect: Intersect) -> CensusReport:
    """Census of a graph in a single traversal of its edges.

    For every edge ``st`` the common neighborhoods of ``(s, t)``, of ``(t, u)``
    for ``u`` in N(s) - {t} and of ``(s, u)`` for ``u`` in N(t) - {s} are
    obtained from ``intersect``. Passing a plain sorted merge gives the general
    algorithm; passing a memoising lookup gives the reuse variant.

    Args:
        graph (Graph): Input graph.
        intersect (Intersect): Returns the common neighborhood summary of two vertices.

    Returns:
        CensusReport: Census of the graph
    """
    agg = degree_aggregates(graph)
    m, k, xi = graph.m, graph.degrees, agg.xi
    adjacency = graph.adjacency

    mu1 = mu2 = paths5 = cycles4 = paw = c3l2 = lambda1 = lambda2 = 0
    for s, t in graph.edges():
        ks, kt = k[s], k[t]
        st = intersect(s, t)

        mu1 += xi[s] + xi[t]
        mu2 += st.size
        paw += st.degree_sum - 2 * st.size
        c3l2 += (m - ks - kt + 3) * st.size - st.degree_sum

        partial = (kt - 1) * (xi[s] - kt) + (ks - 1) * (xi[t] - ks) - 2 * st.degree_sum
        lambda1 += partial
        lambda2 += partial + (ks + kt) * ((ks - 1) * (kt - 1) - st.size)

        for u in adjacency[s]:
            if u == t:
                continue
            a = 1 if graph.has_edge(t, u) else 0
            paths5 += (kt - 1 - a) * (k[u] - 1 - a) + 1 - intersect(t, u).size

        for u in adjacency[t]:
            if u == s:
                continue
            a = 1 if graph.has_edge(s, u) else 0
            common = intersect(s, u).size
            paths5 += (ks - 1 - a) * (k[u] - 1 - a) + 1 - common
            cycles4 += common - 1

    mu1 = exact_div(mu1, 2, "mu1")
    return CensusReport(
        q=compute_q(graph),
        K=compute_K(graph, agg),
        phi1=compute_phi1(graph, agg),
        phi2=compute_phi2(graph, agg),
        lambda1=lambda1,
        lambda2=lambda2,
        mu1=mu1,
        mu2=mu2,
        nP4=m - agg.mmt2 + mu1 - mu2,
        nP5=exact_div(paths5, 2, "nP5"),
        nC3=exact_div(mu2, 3, "nC3"),
        nC4=exact_div(cycles4, 4, "nC4"),
        nPaw=paw,
        nC3L2=exact_div(c3l2, 3, "nC3L2"),
    )


class GeneralVariance(VarianceAlgorithm):
    """
    Variance for any graph in O(max degree * n * <k^2>) time, intersecting
    neighborhoods by merging sorted adjacency lists each time they are needed.
    """

    name = "general"

    def compute(self, graph: Graph, table: ExpectationTable) -> VarianceResult:
        census = edge_pass_census(graph, lambda u, v: neighbor_intersection(graph, u, v))
        logger.debug(f"General census of {graph}: {census}")
        return VarianceResult(
            variance=general_layout_variance(census, graph.m, table),
            expectation=table.expectation(census.q),
            algorithm=self.name,
            census=census,
        )


def variance_general(
    graph: Graph, table: ExpectationTable, config: Optional[OracleConfig] = None
) -> VarianceResult:
    return GeneralVariance(config).run(graph, table)
