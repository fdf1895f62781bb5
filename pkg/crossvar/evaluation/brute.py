"""Brute-force oracles for the census and the product-type frequencies."""
import logging
from collections import Counter
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from crossvar.core.census import CensusReport
from crossvar.core.config import OracleConfig, DEFAULT_CONFIG
from crossvar.core.errors import InconsistentCensusError, OracleBudgetError
from crossvar.core.frequency import (
    FrequencyVector,
    ProductType,
    PRODUCT_MULTIPLIERS,
    PRODUCT_PATTERNS,
    independent_pairs,
)
from crossvar.core.graph import Edge, Graph, compute_q
from crossvar.core.utils import exact_div

logger = logging.getLogger(__name__)

PATTERN_EDGES = {
    "L3": [(0, 1), (1, 2)],
    "2L2": [(0, 1), (2, 3)],
    "C3": [(0, 1), (1, 2), (0, 2)],
    "L4": [(0, 1), (1, 2), (2, 3)],
    "L3+L2": [(0, 1), (1, 2), (3, 4)],
    "3L2": [(0, 1), (2, 3), (4, 5)],
    "L5": [(0, 1), (1, 2), (2, 3), (3, 4)],
    "C4": [(0, 1), (1, 2), (2, 3), (0, 3)],
    "paw": [(0, 1), (1, 2), (0, 2), (0, 3)],
    "C3+L2": [(0, 1), (1, 2), (0, 2), (3, 4)],
    "L4+L2": [(0, 1), (1, 2), (2, 3), (4, 5)],
    "2L3": [(0, 1), (1, 2), (3, 4), (4, 5)],
    "4L2": [(0, 1), (2, 3), (4, 5), (6, 7)],
    "L3+2L2": [(0, 1), (1, 2), (3, 4), (5, 6)],
}


def _relabel(edges: Iterable[Edge]) -> Tuple[Edge, ...]:
    labels: Dict[int, int] = {}
    return tuple(
        (labels.setdefault(u, len(labels)), labels.setdefault(v, len(labels))) for u, v in edges
    )


@lru_cache(maxsize=None)
def _shape_signature(shape: Tuple[Edge, ...]) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
    subgraph = nx.Graph(shape)
    return tuple(
        sorted(
            (len(component), tuple(sorted(d for _, d in subgraph.degree(component))))
            for component in nx.connected_components(subgraph)
        )
    )


def edge_signature(edges: Iterable[Edge]) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
    """Canonical form of a small edge set.

    Each connected component is summarised by its vertex count and sorted
    degree sequence. For graphs with at most four edges this determines the
    graph up to isomorphism. Signatures are cached per relabelled shape, so
    networkx only sees each shape once.

    Args:
        edges (Iterable[Edge]): Edges of the subgraph.

    Returns:
        Tuple: Sorted component summaries
    """
    return _shape_signature(_relabel(edges))


PATTERN_SIGNATURES = {edge_signature(e): name for name, e in PATTERN_EDGES.items()}


def _check_vertices(graph: Graph, oracle: str, config: OracleConfig) -> None:
    if graph.n > config.max_census_vertices:
        raise OracleBudgetError(oracle, graph.n, config.max_census_vertices)


def count_subgraphs(
    graph: Graph,
    sizes: Sequence[int] = (2, 3, 4),
    config: Optional[OracleConfig] = None,
) -> Counter:
    """Count the non-induced subgraphs matching each named pattern.

    Every subset of ``k`` edges, for ``k`` in ``sizes``, is reduced to its
    canonical form and matched against the hard-coded patterns.

    Args:
        graph (Graph): Input graph.
        sizes (Sequence[int], optional): Edge-subset sizes to scan. Defaults to (2, 3, 4).
        config (Optional[OracleConfig], optional): Cost guards. Defaults to the package defaults.

    Raises:
        OracleBudgetError: if the number of edge subsets exceeds the budget.

    Returns:
        Counter: Pattern name -> number of subgraphs
    """
    config = config or DEFAULT_CONFIG
    subsets = sum(comb(graph.m, k) for k in sizes)
    if subsets > config.max_edge_subsets:
        raise OracleBudgetError("edge subsets", subsets, config.max_edge_subsets)

    counts: Counter = Counter()
    for k in sizes:
        counts.update(_pattern_counts(graph, k))
    return counts


@lru_cache(maxsize=32)
def _pattern_counts(graph: Graph, k: int) -> Counter:
    # shared between the brute census and the subgraph-count frequencies
    counts: Counter = Counter()
    for subset in combinations(graph.edges(), k):
        name = PATTERN_SIGNATURES.get(edge_signature(subset))
        if name is not None:
            counts[name] += 1
    logger.debug(f"{sum(counts.values())} pattern matches among {k}-edge subsets of {graph}")
    return counts


def matrix_identities(graph: Graph) -> Dict[str, int]:
    """Alternative closed forms of the L4 and C4 counts.

    Args:
        graph (Graph): Input graph.

    Returns:
        Dict[str, int]: The L4 count through Q, through powers of the adjacency
                        matrix and through the moments m_p, and the C4 count
                        through Q and through the trace of A^4
    """
    n, m = graph.n, graph.m
    A = np.zeros((n, n), dtype=np.int64)
    for s, t in graph.edges():
        A[s, t] = A[t, s] = 1
    degrees = A.sum(axis=1)
    A3 = A @ A @ A
    A4 = A3 @ A

    upper = np.triu_indices(n, 1)
    off_diagonal = ~np.eye(n, dtype=bool)
    sum_k2 = int((degrees**2).sum())
    q = exact_div(m * (m + 1) - sum_k2, 2, "q")

    paths4_moment = int(A3[upper].sum()) + int(A[upper].sum()) - sum_k2
    walks = A3 - A * (2 * degrees - 1)[np.newaxis, :]
    paths4_matrix = exact_div(int(walks[off_diagonal].sum()), 2, "L4 matrix form")
    cycles4_trace = exact_div(int(np.trace(A4)) + 4 * q - 2 * m * m, 8, "C4 trace form")

    adjacent_pairs = cross_pairs = 0
    for (s, t), (u, v) in independent_pairs(graph):
        a_su, a_sv = int(A[s, u]), int(A[s, v])
        a_tu, a_tv = int(A[t, u]), int(A[t, v])
        adjacent_pairs += a_su + a_sv + a_tu + a_tv
        cross_pairs += a_sv * a_tu + a_su * a_tv

    return {
        "paths4_qsum": adjacent_pairs,
        "paths4_matrix": paths4_matrix,
        "paths4_moment": paths4_moment,
        "cycles4_qsum": exact_div(cross_pairs, 2, "C4 Q form"),
        "cycles4_trace": cycles4_trace,
    }


def brute_census(graph: Graph, config: Optional[OracleConfig] = None) -> CensusReport:
    """Compute the census by exhaustive enumeration.

    Subgraph counts come from edge-subset matching, the Q aggregates from
    their definitions as sums over independent pairs, and the L4 and C4
    counts are cross-checked against :func:`matrix_identities`.

    Args:
        graph (Graph): Input graph.
        config (Optional[OracleConfig], optional): Cost guards. Defaults to the package defaults.

    Raises:
        OracleBudgetError: if the graph exceeds the oracle limits.
        InconsistentCensusError: if the alternative L4 or C4 forms disagree.

    Returns:
        CensusReport: Census of the graph
    """
    config = config or DEFAULT_CONFIG
    _check_vertices(graph, "brute census", config)

    counts = count_subgraphs(graph, sizes=(3, 4), config=config)
    k = graph.degrees

    def a(x: int, y: int) -> int:
        return 1 if graph.has_edge(x, y) else 0

    pairs = independent_pairs(graph)
    K = phi1 = phi2 = lambda1 = lambda2 = 0
    for (s, t), (u, v) in pairs:
        adjacency = a(s, u) + a(s, v) + a(t, u) + a(t, v)
        K += k[s] + k[t] + k[u] + k[v]
        phi1 += k[s] * k[t] + k[u] * k[v]
        phi2 += (k[s] + k[t]) * (k[u] + k[v])
        lambda1 += (
            a(s, u) * (k[t] + k[v])
            + a(s, v) * (k[t] + k[u])
            + a(t, u) * (k[s] + k[v])
            + a(t, v) * (k[s] + k[u])
        )
        lambda2 += adjacency * (k[s] + k[t] + k[u] + k[v])

    xi = [sum(k[t] for t in graph.neighbors(s)) for s in range(graph.n)]
    mu1 = mu2 = 0
    for s, t in graph.edges():
        mu1 += xi[s] + xi[t]
        mu2 += len(set(graph.neighbors(s)) & set(graph.neighbors(t)))

    report = CensusReport(
        q=len(pairs),
        K=K,
        phi1=phi1,
        phi2=phi2,
        lambda1=lambda1,
        lambda2=lambda2,
        mu1=exact_div(mu1, 2, "mu1"),
        mu2=mu2,
        nP4=counts["L4"],
        nP5=counts["L5"],
        nC3=counts["C3"],
        nC4=counts["C4"],
        nPaw=counts["paw"],
        nC3L2=counts["C3+L2"],
    )

    identities = matrix_identities(graph)
    paths4 = {identities[key] for key in ("paths4_qsum", "paths4_matrix", "paths4_moment")}
    cycles4 = {identities[key] for key in ("cycles4_qsum", "cycles4_trace")}
    if paths4 != {report.nP4} or cycles4 != {report.nC4}:
        raise InconsistentCensusError(
            f"L4/C4 identities disagree on {graph}: {identities}, "
            f"nP4={report.nP4}, nC4={report.nC4}"
        )

    logger.debug(f"Brute census of {graph}: {report}")
    return report


OFFSET_021 = 100

# 10 * shared edges + shared vertices, plus OFFSET_021 for 021
TYPE_CODES = {
    24: ProductType.T24,
    13: ProductType.T13,
    12: ProductType.T12,
    4: ProductType.T04,
    3: ProductType.T03,
    2: ProductType.T022,
    1: ProductType.T01,
    0: ProductType.T00,
    OFFSET_021 + 2: ProductType.T021,
}

BLOCK_ENTRIES = 1 << 20


def frequencies_brute(graph: Graph, config: Optional[OracleConfig] = None) -> FrequencyVector:
    """Classify every ordered pair of Q x Q.

    The classification runs on incidence matrices of Q, one block of rows at
    a time. Results are cached per graph, so the naive variance and the brute
    frequency route share one pass.

    Args:
        graph (Graph): Input graph.
        config (Optional[OracleConfig], optional): Cost guards. Defaults to the package defaults.

    Raises:
        OracleBudgetError: if q squared exceeds the budget.

    Returns:
        FrequencyVector: All nine frequencies
    """
    config = config or DEFAULT_CONFIG
    q = compute_q(graph)
    if q * q > config.max_pair_products:
        raise OracleBudgetError("Q x Q classification", q * q, config.max_pair_products)
    return FrequencyVector(_pair_type_counts(graph))


@lru_cache(maxsize=8)
def _pair_type_counts(graph: Graph) -> Dict[ProductType, int]:
    counts = {w: 0 for w in ProductType}
    pairs = independent_pairs(graph)
    q = len(pairs)
    if q == 0:
        return counts

    edge_ids = {edge: i for i, edge in enumerate(graph.edges())}
    first = np.array([edge_ids[e1] for e1, _ in pairs])
    second = np.array([edge_ids[e2] for _, e2 in pairs])
    # compress to the vertices actually covered by an edge
    covered, ends = np.unique(
        np.array([[s, t, u, v] for (s, t), (u, v) in pairs]), return_inverse=True
    )
    ends = ends.reshape(q, 4)

    rows = np.arange(q)[:, np.newaxis]
    vertices = np.zeros((q, len(covered)), dtype=np.float32)
    vertices[rows, ends] = 1
    first_ends = np.zeros_like(vertices)
    first_ends[rows, ends[:, :2]] = 1
    second_ends = np.zeros_like(vertices)
    second_ends[rows, ends[:, 2:]] = 1

    totals = np.zeros(OFFSET_021 + 3, dtype=np.int64)
    block = max(1, BLOCK_ENTRIES // q)
    for start in range(0, q, block):
        rs = slice(start, min(q, start + block))
        # entries are at most 4, exact in float32
        phi = np.rint(vertices[rs] @ vertices.T).astype(np.int64)
        tau = sum(
            (x[rs, np.newaxis] == y[np.newaxis, :]).astype(np.int64)
            for x, y in ((first, first), (first, second), (second, first), (second, second))
        )
        # an edge of one pair inside the vertex set of the other
        spans_edge = (
            (first_ends[rs] @ vertices.T > 1.5)
            | (second_ends[rs] @ vertices.T > 1.5)
            | (vertices[rs] @ first_ends.T > 1.5)
            | (vertices[rs] @ second_ends.T > 1.5)
        )
        codes = 10 * tau + phi + OFFSET_021 * (spans_edge & (tau == 0) & (phi == 2))
        totals += np.bincount(codes.ravel(), minlength=len(totals))

    for code, omega in TYPE_CODES.items():
        counts[omega] = int(totals[code])
    return counts



def frequencies_from_subgraph_counts(
    graph: Graph, config: Optional[OracleConfig] = None
) -> FrequencyVector:
    """Frequencies as multiples of subgraph counts, f_w = a_w n(F_w).

    Args:
        graph (Graph): Input graph.
        config (Optional[OracleConfig], optional): Cost guards. Defaults to the package defaults.

    Raises:
        OracleBudgetError: if the graph exceeds the oracle limits.

    Returns:
        FrequencyVector: All nine frequencies
    """
    config = config or DEFAULT_CONFIG
    _check_vertices(graph, "subgraph counts", config)
    counts = count_subgraphs(graph, sizes=(2, 3, 4), config=config)
    return FrequencyVector(
        {w: PRODUCT_MULTIPLIERS[w] * counts[PRODUCT_PATTERNS[w]] for w in ProductType}
    )


def clear_oracle_caches() -> None:
    """Forget the cached pattern counts and Q x Q classifications."""
    _pattern_counts.cache_clear()
    _pair_type_counts.cache_clear()
