from dataclasses import dataclass, asdict, fields
from fractions import Fraction
from typing import Optional, Tuple

import pandas as pd

from crossvar.core.errors import InconsistentCensusError
from crossvar.core.graph import (
    Graph,
    DegreeAggregates,
    degree_aggregates,
    compute_q,
    compute_K,
    compute_phi1,
    compute_phi2,
    count_paths3,
)
from crossvar.core.utils import exact_div

SUBGRAPH_COUNTS = ("nP4", "nP5", "nC3", "nC4", "nPaw", "nC3L2")


@dataclass(frozen=True)
class NeighborIntersection:
    """Common neighborhood summary of two vertices.

    ``size`` is the number of common neighbors and ``degree_sum`` the sum of
    their degrees.
    """

    size: int
    degree_sum: int


@dataclass(frozen=True)
class CensusReport:
    """
    Aggregates and subgraph counts that determine the variance of crossings.
    """

    q: int
    K: int
    phi1: int
    phi2: int
    lambda1: int
    lambda2: int
    mu1: int
    mu2: int
    nP4: int
    nP5: int
    nC3: int
    nC4: int
    nPaw: int
    nC3L2: int

    def __post_init__(self) -> None:
        negative = [name for name in SUBGRAPH_COUNTS if getattr(self, name) < 0]
        if negative or self.q < 0:
            raise InconsistentCensusError(f"negative census counts: {negative or ['q']}")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "CensusReport":
        return cls(**{f.name: int(data[f.name]) for f in fields(cls)})

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame([self.to_json()])


def neighbor_intersection(graph: Graph, u: int, v: int) -> NeighborIntersection:
    """Intersect the neighborhoods of two vertices by merging their sorted lists.

    Runs in O(k_u + k_v) time.

    Args:
        graph (Graph): Input graph.
        u (int): First vertex.
        v (int): Second vertex, distinct from ``u``.

    Raises:
        ValueError: if ``u == v``.

    Returns:
        NeighborIntersection: Size of the common neighborhood and the sum of its degrees
    """
    if u == v:
        raise ValueError(f"neighbor intersection needs two distinct vertices, got {u} twice")

    a, b = graph.adjacency[u], graph.adjacency[v]
    k = graph.degrees
    i = j = size = degree_sum = 0

    while i < len(a) and j < len(b):
        x, y = a[i], b[j]
        if x == y:
            size += 1
            degree_sum += k[x]
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1

    return NeighborIntersection(size=size, degree_sum=degree_sum)


def compute_mu(graph: Graph, agg: Optional[DegreeAggregates] = None) -> Tuple[int, int]:
    """Edge sums behind the path-of-4 count.

    Returns:
        Tuple[int, int]: (mu1, mu2) with mu1 = sum over edges of (xi(s) + xi(t)) / 2
               and mu2 = sum over edges of |c(s, t)|
    """
    agg = agg or degree_aggregates(graph)
    mu1 = mu2 = 0
    for s, t in graph.edges():
        mu1 += agg.xi[s] + agg.xi[t]
        mu2 += neighbor_intersection(graph, s, t).size
    return exact_div(mu1, 2, "mu1"), mu2


def count_paths4(graph: Graph, agg: Optional[DegreeAggregates] = None) -> int:
    """Number of subgraphs isomorphic to a path on 4 vertices.

    Args:
        graph (Graph): Input graph.
        agg (Optional[DegreeAggregates], optional): Precomputed aggregates. Defaults to None.

    Returns:
        int: m - mmt2 + mu1 - mu2
    """
    agg = agg or degree_aggregates(graph)
    mu1, mu2 = compute_mu(graph, agg)
    return graph.m - agg.mmt2 + mu1 - mu2


def _paths5_from(graph: Graph, s: int, t: int) -> int:
    # paths w-t-s-u-x through the directed edge (s, t)
    k = graph.degrees
    total = 0
    for u in graph.adjacency[s]:
        if u == t:
            continue
        a = 1 if graph.has_edge(t, u) else 0
        common = neighbor_intersection(graph, t, u).size
        total += (k[t] - 1 - a) * (k[u] - 1 - a) + 1 - common
    return total


def count_paths5(graph: Graph) -> int:
    """Number of subgraphs isomorphic to a path on 5 vertices.

    Args:
        graph (Graph): Input graph.

    Returns:
        int: Half the sum over edges of the paths centred on each endpoint
    """
    total = 0
    for s, t in graph.edges():
        total += _paths5_from(graph, s, t) + _paths5_from(graph, t, s)
    return exact_div(total, 2, "nP5")


def count_cycles4(graph: Graph) -> int:
    """Number of cycles on 4 vertices.

    Args:
        graph (Graph): Input graph.

    Returns:
        int: A quarter of the sum over edges st and u in N(t) - {s} of (|c(s, u)| - 1)
    """
    total = 0
    for s, t in graph.edges():
        for u in graph.adjacency[t]:
            if u != s:
                total += neighbor_intersection(graph, s, u).size - 1
    return exact_div(total, 4, "nC4")


def count_paw(graph: Graph) -> int:
    """Number of subgraphs isomorphic to the paw (a triangle with a pendant edge)."""
    total = 0
    for s, t in graph.edges():
        common = neighbor_intersection(graph, s, t)
        total += common.degree_sum - 2 * common.size
    return total


def count_c3l2(graph: Graph) -> int:
    """Number of subgraphs isomorphic to a triangle plus a disjoint edge.

    Args:
        graph (Graph): Input graph.

    Returns:
        int: A third of the sum over edges of (m - k_s - k_t + 3)|c(s, t)| - S(s, t)
    """
    m, k = graph.m, graph.degrees
    total = 0
    for s, t in graph.edges():
        common = neighbor_intersection(graph, s, t)
        total += (m - k[s] - k[t] + 3) * common.size - common.degree_sum
    return exact_div(total, 3, "nC3L2")


def count_triangles(graph: Graph) -> int:
    total = sum(neighbor_intersection(graph, s, t).size for s, t in graph.edges())
    return exact_div(total, 3, "nC3")


def compute_lambda1(graph: Graph, agg: Optional[DegreeAggregates] = None) -> int:
    """Sum over independent pairs of adjacency-weighted endpoint degrees.

    Args:
        graph (Graph): Input graph.
        agg (Optional[DegreeAggregates], optional): Precomputed aggregates. Defaults to None.

    Returns:
        int: Lambda_1
    """
    agg = agg or degree_aggregates(graph)
    k, xi = graph.degrees, agg.xi
    total = 0
    for s, t in graph.edges():
        common = neighbor_intersection(graph, s, t)
        total += (
            (k[t] - 1) * (xi[s] - k[t])
            + (k[s] - 1) * (xi[t] - k[s])
            - 2 * common.degree_sum
        )
    return total


def compute_lambda2(
    graph: Graph,
    agg: Optional[DegreeAggregates] = None,
    lambda1: Optional[int] = None,
) -> int:
    """Sum over independent pairs of the adjacency count times the degree sum.

    Args:
        graph (Graph): Input graph.
        agg (Optional[DegreeAggregates], optional): Precomputed aggregates. Defaults to None.
        lambda1 (Optional[int], optional): Precomputed Lambda_1. Defaults to None.

    Returns:
        int: Lambda_2
    """
    if lambda1 is None:
        lambda1 = compute_lambda1(graph, agg)
    k = graph.degrees
    total = lambda1
    for s, t in graph.edges():
        common = neighbor_intersection(graph, s, t).size
        total += (k[s] + k[t]) * ((k[s] - 1) * (k[t] - 1) - common)
    return total


def transitivity(graph: Graph) -> Fraction:
    """Transitivity index 3 n(C3) / n(L3), zero for graphs without paths of length 2."""
    paths3 = count_paths3(graph)
    if paths3 == 0:
        return Fraction(0)
    return Fraction(3 * count_triangles(graph), paths3)


def hash_table_bound(graph: Graph) -> int:
    """Upper bound on the number of vertex pairs memoised by the reuse algorithm.

    Adjacent pairs plus open paths of length 2: m + n(L3) - 3 n(C3).
    """
    return graph.m + count_paths3(graph) - 3 * count_triangles(graph)


def fast_census(graph: Graph) -> CensusReport:
    """Compute a full census through the edge-traversal forms.

    Args:
        graph (Graph): Input graph.

    Returns:
        CensusReport: Census of the graph
    """
    agg = degree_aggregates(graph)
    mu1, mu2 = compute_mu(graph, agg)
    lambda1 = compute_lambda1(graph, agg)
    return CensusReport(
        q=compute_q(graph),
        K=compute_K(graph, agg),
        phi1=compute_phi1(graph, agg),
        phi2=compute_phi2(graph, agg),
        lambda1=lambda1,
        lambda2=compute_lambda2(graph, agg, lambda1),
        mu1=mu1,
        mu2=mu2,
        nP4=graph.m - agg.mmt2 + mu1 - mu2,
        nP5=count_paths5(graph),
        nC3=exact_div(mu2, 3, "nC3"),
        nC4=count_cycles4(graph),
        nPaw=count_paw(graph),
        nC3L2=count_c3l2(graph),
    )
