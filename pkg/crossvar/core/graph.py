import logging
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Tuple

import networkx as nx

from crossvar.core.errors import GraphParseError, GraphValidationError
from crossvar.core.utils import exact_div

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

N_DIRECTIVE = "n="


class Graph:
    """
    Immutable simple undirected graph over the vertices ``0..n-1``.
    """

    __slots__ = ("_n", "_m", "_adjacency", "_neighbor_sets", "_degrees")

    def __init__(self, n: int, edges: Iterable[Edge] = ()) -> None:
        """Initialize a graph.

        Duplicate edges (in either orientation) are collapsed with a warning.

        Args:
            n (int): Number of vertices.
            edges (Iterable[Edge], optional): Edges as vertex pairs. Defaults to ().

        Raises:
            GraphValidationError: if an edge is a self-loop or uses a vertex outside ``0..n-1``.
        """
        if n < 0:
            raise GraphValidationError(f"vertex count should be non-negative, got {n}")

        neighbors: List[set] = [set() for _ in range(n)]
        duplicates = 0

        for u, v in edges:
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u}")
            for x in (u, v):
                if not 0 <= x < n:
                    raise GraphValidationError(f"vertex {x} outside [0, {n})")
            if v in neighbors[u]:
                duplicates += 1
                continue
            neighbors[u].add(v)
            neighbors[v].add(u)

        if duplicates:
            warnings.warn(f"Collapsed {duplicates} duplicate edge(s)")

        self._n = n
        self._adjacency = tuple(tuple(sorted(nb)) for nb in neighbors)
        self._neighbor_sets = tuple(frozenset(nb) for nb in neighbors)
        self._degrees = tuple(len(nb) for nb in neighbors)
        self._m = sum(self._degrees) // 2

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Per-vertex neighbor lists in ascending order."""
        return self._adjacency

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self._degrees

    @property
    def max_degree(self) -> int:
        return max(self._degrees, default=0)

    def neighbors(self, s: int) -> Tuple[int, ...]:
        return self._adjacency[s]

    def degree(self, s: int) -> int:
        return self._degrees[s]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> Iterator[Edge]:
        """Iterate over edges ``(s, t)`` with ``s < t`` in lexicographic order."""
        for s, neighbors in enumerate(self._adjacency):
            for t in neighbors:
                if t > s:
                    yield s, t

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self._n == other._n
            and self._adjacency == other._adjacency
        )

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash((self._n, self._adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"

    @classmethod
    def from_edgelist(cls, source: str) -> "Graph":
        """Initialize a graph from edge-list text. See :func:`load_graph`."""
        return load_graph(source)

    @classmethod
    def from_file(cls, filepath: str) -> "Graph":
        """Initialize a graph from an edge-list file. See :func:`load_graph`."""
        return read_graph(filepath)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Initialize a graph from a networkx graph.

        Nodes that are not already ``0..n-1`` are relabelled in iteration order.

        Args:
            graph (nx.Graph): Undirected simple networkx graph.

        Raises:
            GraphValidationError: if the graph is directed or a multigraph.

        Returns:
            Graph: An instance of Graph
        """
        if graph.is_directed() or graph.is_multigraph():
            raise GraphValidationError("only simple undirected graphs are supported")

        n = graph.number_of_nodes()
        if set(graph.nodes) != set(range(n)):
            graph = nx.convert_node_labels_to_integers(graph)

        return cls(n, graph.edges())

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self.edges())
        return graph

    def to_edgelist(self) -> str:
        """Render the graph in the edge-list format read by :func:`load_graph`.

        Returns:
            str: Edge-list text with an ``n=`` directive
        """
        lines = [f"{N_DIRECTIVE}{self._n}"]
        lines.extend(f"{s} {t}" for s, t in self.edges())
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"n": self._n, "m": self._m, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        return cls(data["n"], [tuple(e) for e in data["edges"]])


def load_graph(source: str) -> Graph:
    """Parse edge-list text into a graph.

    Lines starting with ``#`` and blank lines are ignored. An optional
    ``n=<int>`` directive before the first edge forces the vertex count,
    which otherwise is one more than the largest vertex id.

    Args:
        source (str): Edge-list text, one ``u v`` pair per line.

    Raises:
        GraphParseError: if a line is malformed.
        GraphValidationError: if an edge is a self-loop or exceeds the declared ``n``.

    Returns:
        Graph: Parsed graph
    """
    declared_n: Optional[int] = None
    edges: List[Edge] = []

    for number, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        if line.replace(" ", "").startswith(N_DIRECTIVE):
            if edges or declared_n is not None:
                raise GraphParseError(number, "the n= directive must precede all edges")
            value = line.split("=", 1)[1].strip()
            try:
                declared_n = int(value)
            except ValueError:
                raise GraphParseError(number, f"bad vertex count {value!r}")
            if declared_n < 0:
                raise GraphParseError(number, f"bad vertex count {value!r}")
            continue

        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(
                number, f"expected two vertex ids, got {len(tokens)} field(s)"
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(number, f"vertex ids should be integers: {line!r}")
        if u < 0 or v < 0:
            raise GraphParseError(number, f"vertex ids should be non-negative: {line!r}")
        if u == v:
            raise GraphValidationError(f"line {number}: self-loop at vertex {u}")
        edges.append((u, v))

    inferred_n = 1 + max((max(e) for e in edges), default=-1)
    if declared_n is None:
        n = inferred_n
    elif declared_n < inferred_n:
        raise GraphValidationError(
            f"declared n={declared_n} but vertex {inferred_n - 1} appears"
        )
    else:
        n = declared_n

    graph = Graph(n, edges)
    logger.debug(f"Loaded {graph}")
    return graph


def read_graph(filepath: str) -> Graph:
    with open(filepath, encoding="utf-8") as file:
        return load_graph(file.read())


@dataclass(frozen=True)
class DegreeAggregates:
    """Degree moments and neighbor-degree sums of a graph.

    ``mmt2`` and ``mmt3`` are the sums of squared and cubed degrees (n times
    the second and third moments), ``xi[s]`` is the sum of the degrees of the
    neighbors of ``s`` and ``psi`` the sum over edges of endpoint-degree products.
    """

    mmt2: int
    mmt3: int
    xi: Tuple[int, ...]
    psi: int

    @classmethod
    def from_graph(cls, graph: Graph) -> "DegreeAggregates":
        degrees = graph.degrees
        mmt2 = sum(k * k for k in degrees)
        mmt3 = sum(k * k * k for k in degrees)
        xi = tuple(sum(degrees[t] for t in nb) for nb in graph.adjacency)
        psi = sum(degrees[s] * degrees[t] for s, t in graph.edges())
        return cls(mmt2=mmt2, mmt3=mmt3, xi=xi, psi=psi)


def degree_aggregates(graph: Graph) -> DegreeAggregates:
    """Compute the degree aggregates in O(n + m) time."""
    return DegreeAggregates.from_graph(graph)


def compute_q(graph: Graph) -> int:
    """Number of pairs of vertex-disjoint edges.

    Args:
        graph (Graph): Input graph.

    Returns:
        int: q = (m(m + 1) - sum of squared degrees) / 2
    """
    m = graph.m
    return exact_div(m * (m + 1) - sum(k * k for k in graph.degrees), 2, "q")


def compute_K(graph: Graph, agg: Optional[DegreeAggregates] = None) -> int:
    """Sum over independent edge pairs of the four endpoint degrees.

    Args:
        graph (Graph): Input graph.
        agg (Optional[DegreeAggregates], optional): Precomputed aggregates. Defaults to None.

    Returns:
        int: (m + 1) * mmt2 - mmt3 - 2 * psi
    """
    agg = agg or degree_aggregates(graph)
    return (graph.m + 1) * agg.mmt2 - agg.mmt3 - 2 * agg.psi


def compute_phi1(graph: Graph, agg: Optional[DegreeAggregates] = None) -> int:
    """Sum over independent edge pairs ``{st, uv}`` of ``k_s k_t + k_u k_v``.

    Args:
        graph (Graph): Input graph.
        agg (Optional[DegreeAggregates], optional): Precomputed aggregates. Defaults to None.

    Returns:
        int: (m + 1) * psi - sum over edges of k_s k_t (k_s + k_t)
    """
    agg = agg or degree_aggregates(graph)
    k = graph.degrees
    correction = sum(k[s] * k[t] * (k[s] + k[t]) for s, t in graph.edges())
    return (graph.m + 1) * agg.psi - correction


def compute_phi2(graph: Graph, agg: Optional[DegreeAggregates] = None) -> int:
    """Sum over independent edge pairs ``{st, uv}`` of ``(k_s + k_t)(k_u + k_v)``.

    Args:
        graph (Graph): Input graph.
        agg (Optional[DegreeAggregates], optional): Precomputed aggregates. Defaults to None.

    Returns:
        int: Phi_2, evaluated edge by edge
    """
    agg = agg or degree_aggregates(graph)
    k, xi = graph.degrees, agg.xi
    total = 0
    for s, t in graph.edges():
        total += (k[s] + k[t]) * (
            agg.mmt2 - xi[s] - xi[t] - k[s] * (k[s] - 1) - k[t] * (k[t] - 1)
        )
    return exact_div(total, 2, "phi2")


def count_paths3(graph: Graph) -> int:
    """Number of subgraphs isomorphic to a path on 3 vertices."""
    return sum(k * (k - 1) // 2 for k in graph.degrees)


def is_forest(graph: Graph) -> bool:
    """A graph is acyclic iff m = n - (number of connected components)."""
    return graph.m + nx.number_connected_components(graph.to_networkx()) == graph.n
